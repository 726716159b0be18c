"""Arthur parameters psi = sum r_i (x) sp_k_i for SO(2n).

Coefficients are opaque data: a character (trivial, quadratic, the unitary
unit character t, or |.|^s) or a cuspidal GL_d datum described by its
dimension, duality type and Satake eigenvalues.  Quadratic characters carry
a label; distinct labels are treated as independent characters, so the
determinant of a sum of them is trivial only when every label occurs an
even number of times.

The text form is ``block + block + ...`` with ``block = coef*spK``::

    >>> psi = parse_parameter("unit(t)*sp4 + unit(t^-1)*sp4")
    >>> render(psi)
    'unit(t)*sp4 + unit(t^-1)*sp4'
    >>> [str(m) for m in hecke_matrix_of(psi).entries]
    ['p^(3/2)*t', 'p^(1/2)*t', 'p^(-1/2)*t', 'p^(-3/2)*t']
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Monomial, as_fraction
from .errors import ShapeError
from .hecke import HeckeMatrix, conjugate_under_weyl


class CoefKind(enum.Enum):
    TRIVIAL = "triv"
    QUADRATIC = "eps"
    UNIT = "unit"
    ABS = "abs"
    CUSPIDAL = "cusp"


ORTHOGONAL = "orth"
SYMPLECTIC = "symp"


@dataclass(frozen=True)
class BlockCoefficient:
    kind: CoefKind
    label: str = ""
    t_power: int = 0
    s: Fraction = Fraction(0)
    dim: int = 1
    duality: str | None = None
    eigenvalues: tuple[Monomial, ...] = ()

    def __post_init__(self):
        if self.kind is CoefKind.UNIT and self.t_power not in (1, -1):
            raise ShapeError("unit character must be t or t^-1")
        if self.kind is CoefKind.CUSPIDAL:
            if self.duality not in (ORTHOGONAL, SYMPLECTIC):
                raise ShapeError(f"cuspidal duality type must be {ORTHOGONAL} or {SYMPLECTIC}")
            if self.dim < 1 or len(self.eigenvalues) != self.dim:
                raise ShapeError(f"cuspidal datum of dimension {self.dim} needs {self.dim} eigenvalues")
            if Counter(self.eigenvalues) != Counter(m.inverse() for m in self.eigenvalues):
                raise ShapeError("eigenvalues of a self-dual cuspidal datum must be closed under inversion")
            if self.duality == SYMPLECTIC and self.dim % 2:
                raise ShapeError("a symplectic cuspidal datum has even dimension")
        elif self.dim != 1:
            raise ShapeError("characters have dimension 1")

    @classmethod
    def trivial(cls) -> BlockCoefficient:
        return cls(CoefKind.TRIVIAL)

    @classmethod
    def quadratic(cls, label: str = "") -> BlockCoefficient:
        return cls(CoefKind.QUADRATIC, label=label)

    @classmethod
    def unit(cls, t_power: int = 1) -> BlockCoefficient:
        return cls(CoefKind.UNIT, t_power=t_power)

    @classmethod
    def abs_power(cls, s) -> BlockCoefficient:
        s = as_fraction(s)
        return cls.trivial() if s == 0 else cls(CoefKind.ABS, s=s)

    @classmethod
    def cuspidal(cls, duality: str, eigenvalues) -> BlockCoefficient:
        ev = tuple(eigenvalues)
        return cls(CoefKind.CUSPIDAL, dim=len(ev), duality=duality, eigenvalues=ev)

    def dual(self) -> BlockCoefficient:
        if self.kind is CoefKind.UNIT:
            return BlockCoefficient.unit(-self.t_power)
        if self.kind is CoefKind.ABS:
            return BlockCoefficient.abs_power(-self.s)
        return self

    def is_self_dual(self) -> bool:
        return self.dual() == self

    def duality_type(self) -> str | None:
        """Orthogonal or symplectic for self-dual coefficients, else None."""
        if not self.is_self_dual():
            return None
        return self.duality if self.kind is CoefKind.CUSPIDAL else ORTHOGONAL

    def is_quadratic_or_trivial(self) -> bool:
        return self.kind in (CoefKind.TRIVIAL, CoefKind.QUADRATIC)

    def local_eigenvalues(self, quadratic_signs: dict[str, int] | None = None) -> tuple[Monomial, ...]:
        """Satake eigenvalues at an unramified place."""
        if self.kind is CoefKind.TRIVIAL:
            return (Monomial(),)
        if self.kind is CoefKind.UNIT:
            return (Monomial(t=self.t_power),)
        if self.kind is CoefKind.ABS:
            twice = 2 * self.s
            if twice.denominator != 1:
                raise ShapeError(f"|.|^{self.s} has no eigenvalue of the form p^(k/2)")
            return (Monomial(p2=-int(twice)),)
        if self.kind is CoefKind.QUADRATIC:
            signs = quadratic_signs or {}
            if self.label not in signs:
                raise ShapeError(f"quadratic character {render_coefficient(self)} has no local value; treat as ramified")
            return (Monomial(sign=signs[self.label]),)
        return self.eigenvalues


@dataclass(frozen=True)
class ArthurBlock:
    coefficient: BlockCoefficient
    spin: int

    def __post_init__(self):
        if self.spin < 1:
            raise ShapeError(f"sp_k needs k >= 1, got {self.spin}")

    @property
    def dimension(self) -> int:
        return self.coefficient.dim * self.spin

    def dual(self) -> ArthurBlock:
        return ArthurBlock(self.coefficient.dual(), self.spin)

    def duality_type(self) -> str | None:
        """Type of r (x) sp_k: sp_k is orthogonal for k odd, symplectic for k even."""
        base = self.coefficient.duality_type()
        if base is None:
            return None
        if self.spin % 2:
            return base
        return SYMPLECTIC if base == ORTHOGONAL else ORTHOGONAL


@dataclass(frozen=True)
class ArthurParameter:
    blocks: tuple[ArthurBlock, ...]
    target_dim: int | None = None

    @property
    def dimension(self) -> int:
        return sum(b.dimension for b in self.blocks)

    @property
    def n(self) -> int:
        dim = self.target_dim if self.target_dim is not None else self.dimension
        return dim // 2

    def multiplicities(self) -> Counter:
        return Counter(self.blocks)

    def is_discrete(self) -> bool:
        return len(set(self.blocks)) == len(self.blocks)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    condition: str
    block: int | None
    message: str

    def __str__(self) -> str:
        where = f"block {self.block + 1}: " if self.block is not None else ""
        return f"{self.condition}: {where}{self.message}"


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}


def validate(psi: ArthurParameter, n: int | None = None) -> ValidityReport:
    """Dimension, self-duality, orthogonal type of each block, determinant one."""
    out: list[Violation] = []
    target = 2 * n if n is not None else psi.target_dim
    if target is not None and psi.dimension != target:
        out.append(Violation("dimension", None, f"blocks have total dimension {psi.dimension}, expected {target}"))

    mult = psi.multiplicities()
    for i, b in enumerate(psi.blocks):
        if mult[b] != mult[b.dual()]:
            out.append(Violation("self-duality", i, f"{render_block(b)} appears without its dual"))
        elif b.duality_type() == SYMPLECTIC and mult[b] % 2:
            out.append(Violation("orthogonal type", i, f"{render_block(b)} is symplectic and occurs an odd number of times"))

    # det(r (x) sp_k) = det(r)^k; cuspidal determinants are taken trivial
    labels = Counter(b.coefficient.label for b in psi.blocks if b.coefficient.kind is CoefKind.QUADRATIC and b.spin % 2)
    for label, count in sorted(labels.items()):
        if count % 2:
            idx = next(
                i
                for i, b in enumerate(psi.blocks)
                if b.coefficient.kind is CoefKind.QUADRATIC and b.coefficient.label == label and b.spin % 2
            )
            name = render_coefficient(BlockCoefficient.quadratic(label))
            out.append(Violation("determinant", idx, f"{name} enters the determinant an odd number of times"))
    return ValidityReport(tuple(out))


def require_valid(psi: ArthurParameter, n: int | None = None) -> None:
    report = validate(psi, n)
    if not report.valid:
        raise ShapeError("; ".join(str(v) for v in report.violations))


# ---------------------------------------------------------------------------
# Hecke matrices


def eigenvalue_multiset(psi: ArthurParameter, quadratic_signs: dict[str, int] | None = None) -> list[Monomial]:
    """All 2n eigenvalues: u p^((k-1)/2), ..., u p^(-(k-1)/2) per block and eigenvalue u."""
    out = []
    for b in psi.blocks:
        for u in b.coefficient.local_eigenvalues(quadratic_signs):
            out.extend(u * Monomial(p2=b.spin - 1 - 2 * j) for j in range(b.spin))
    return out


def hecke_matrix_of(psi: ArthurParameter, p: int | None = None, quadratic_signs: dict[str, int] | None = None) -> HeckeMatrix:
    """The SO(2n) Hecke matrix: eigenvalues paired off with their inverses.

    Entries are taken in block order; an entry closes a pending entry when
    it is that entry's inverse, otherwise it opens a new coordinate.
    """
    first: list[Monomial] = []
    pending: Counter = Counter()
    for x in eigenvalue_multiset(psi, quadratic_signs):
        inv = x.inverse()
        if pending[inv]:
            pending[inv] -= 1
        else:
            first.append(x)
            pending[x] += 1
    odd = [x for x, c in pending.items() if c % 2 and x == x.inverse()]
    if odd:
        raise ShapeError(f"eigenvalue {odd[0]} has odd multiplicity; not a torus element of SO(2n)")
    if any(c and x != x.inverse() for x, c in pending.items()):
        raise ShapeError("eigenvalues are not closed under inversion; the parameter is not self-dual")
    return HeckeMatrix(tuple(first), p)


# ---------------------------------------------------------------------------
# classification


class Verdict(enum.Enum):
    CUSPIDAL_ADMISSIBLE = "CuspidalAdmissible"
    RESIDUAL = "Residual"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: str = ""

    @property
    def residual(self) -> bool:
        return self.verdict is Verdict.RESIDUAL


def classify(psi: ArthurParameter, n: int, remark_threshold: bool = False) -> Classification:
    """Residual when psi forces singular local components.

    A block sp_k with k odd and k > n+1 does, and so does sp_(n+1) plus n-1
    characters.  ``remark_threshold`` lowers the first test to any k >= n,
    a stronger claim that is not backed by a proof.
    """
    if not psi.is_discrete():
        raise ShapeError("classification needs a discrete parameter (pairwise distinct blocks)")
    for b in psi.blocks:
        if b.spin % 2 and b.spin > n + 1:
            return Classification(Verdict.RESIDUAL, f"block {render_block(b)} has odd k={b.spin} > n+1={n + 1}")
    if remark_threshold:
        for b in psi.blocks:
            if b.spin >= n:
                return Classification(Verdict.RESIDUAL, f"block {render_block(b)} has k={b.spin} >= n={n} (opt-in threshold)")
    big = [b for b in psi.blocks if b.spin == n + 1 and b.coefficient.is_quadratic_or_trivial()]
    rest = [b for b in psi.blocks if b not in big]
    if len(big) == 1 and len(rest) == n - 1 and all(b.spin == 1 and b.coefficient.dim == 1 for b in rest):
        return Classification(Verdict.RESIDUAL, f"sp_{n + 1} plus {n - 1} characters")
    return Classification(Verdict.CUSPIDAL_ADMISSIBLE, "no block forces singular local components")


# ---------------------------------------------------------------------------
# packets


class CentralizerType(enum.Enum):
    TORUS1 = "Torus1"
    SL2 = "SL2"
    OTHER = "Other"


@dataclass(frozen=True)
class PacketMember:
    label: str
    multiplicity: int
    character: str


@dataclass(frozen=True)
class PacketDescriptor:
    centralizer_type: CentralizerType
    centralizer_description: str
    component_group_order: int
    s_psi: tuple[int, ...]
    members: tuple[PacketMember, ...] = field(default=())

    def __post_init__(self):
        if self.component_group_order == 1 and len({m.character for m in self.members}) > 1:
            raise ValueError("a trivial component group has a single character")
        if any(m.multiplicity <= 0 for m in self.members):
            raise ValueError("multiplicities are positive")


def _constituents(psi: ArthurParameter) -> list[tuple[ArthurBlock, int]]:
    mult = psi.multiplicities()
    return [(b, mult[b]) for b in dict.fromkeys(psi.blocks)]


def centralizer_factors(psi: ArthurParameter) -> list[str]:
    """O(l), Sp(l) or GL(l) per isotypic constituent, in block order."""
    out = []
    seen = set()
    for b, l in _constituents(psi):
        kind = b.duality_type()
        if kind == ORTHOGONAL:
            out.append(f"O({l})")
        elif kind == SYMPLECTIC:
            out.append(f"Sp({l})")
        elif b.dual() not in seen:
            out.append(f"GL({l})")
        seen.add(b)
    return out


def component_group_order(psi: ArthurParameter) -> int:
    """|S_psi| = |pi_0 of the centralizer in SO(2n), modulo the centre|.

    Each orthogonal constituent psi_i of multiplicity l_i contributes a sign
    e_i (the determinant of its O(l_i) factor); landing in SO(2n) needs
    sum e_i dim psi_i even.  The centre -1 has e_i = l_i mod 2.
    """
    orth = [(b, l) for b, l in _constituents(psi) if b.duality_type() == ORTHOGONAL]
    r = len(orth)
    group = set()
    for mask in range(2 ** r):
        e = [(mask >> i) & 1 for i in range(r)]
        if sum(ei * b.dimension for ei, (b, _) in zip(e, orth)) % 2 == 0:
            group.add(tuple(e))
    centre_is_trivial = not any(l % 2 for _, l in orth)
    return len(group) if centre_is_trivial else len(group) // 2


def _centralizer_type(factors: list[str]) -> CentralizerType:
    if factors == ["GL(1)"]:
        return CentralizerType.TORUS1
    if factors == ["Sp(2)"]:
        return CentralizerType.SL2
    return CentralizerType.OTHER


def s_psi(psi: ArthurParameter) -> tuple[int, ...]:
    """Image of (1, -I): (-1)^(k-1) on every coordinate of each r (x) sp_k."""
    out: list[int] = []
    for b in psi.blocks:
        out.extend([(-1) ** (b.spin - 1)] * b.dimension)
    return tuple(out)


def check_packet_shape(psi: ArthurParameter, n: int) -> BlockCoefficient:
    """The mu (x) sp_n + mu^-1 (x) sp_n shape; returns mu."""
    if len(psi.blocks) != 2 or any(b.spin != n or b.coefficient.dim != 1 for b in psi.blocks):
        raise ShapeError(f"expected mu*sp{n} + mu^-1*sp{n} with mu a character")
    a, b = psi.blocks
    if b.coefficient != a.coefficient.dual():
        raise ShapeError("the two blocks must carry mutually inverse characters")
    return a.coefficient


def packet(psi: ArthurParameter, n: int) -> PacketDescriptor:
    check_packet_shape(psi, n)
    factors = centralizer_factors(psi)
    order = component_group_order(psi)
    members = (PacketMember("{pi, pi o alpha}", 1, "trivial"),) if order == 1 else ()
    return PacketDescriptor(_centralizer_type(factors), " x ".join(factors), order, s_psi(psi), members)


@dataclass(frozen=True)
class TypeCount:
    count: int
    note: str


def global_type_count(psi: ArthurParameter, n: int) -> TypeCount:
    """Number of D_n-conjugacy classes among t_pi and its outer twist.

    Both are residual; the classes exhaust the representations of this
    type, so none is cuspidal.
    """
    mu = check_packet_shape(psi, n)
    if mu.kind is not CoefKind.UNIT:
        raise ShapeError("the residual parameter has mu = unit(t)")
    t = hecke_matrix_of(psi)
    count = 1 if conjugate_under_weyl(t, t.outer_twist(), "D") else 2
    return TypeCount(count, "no cuspidal representation of this type")


def unramified_member_count(psi: ArthurParameter, n: int) -> int:
    """Members of the local packet that are unramified: the trivial character of S_psi only."""
    return sum(1 for m in packet(psi, n).members if m.character == "trivial")


class Irreducibility(enum.Enum):
    IRREDUCIBLE = "Irreducible"
    UNDETERMINED = "Undetermined"


def irreducibility_class(chi: BlockCoefficient) -> Irreducibility:
    """Known irreducibility of the local packet member for chi (x) sp_n.

    Covered: unitary chi with chi^2 != 1, chi of order 2, and |.|^s with
    |s| < 1/2 (the trivial character is |.|^0).
    """
    if chi.kind in (CoefKind.QUADRATIC, CoefKind.UNIT):
        return Irreducibility.IRREDUCIBLE
    if chi.kind is CoefKind.TRIVIAL or (chi.kind is CoefKind.ABS and abs(chi.s) < Fraction(1, 2)):
        return Irreducibility.IRREDUCIBLE
    return Irreducibility.UNDETERMINED


def residual_parameter(n: int) -> ArthurParameter:
    """unit(t)*sp_n + unit(t^-1)*sp_n."""
    return ArthurParameter(
        (ArthurBlock(BlockCoefficient.unit(1), n), ArthurBlock(BlockCoefficient.unit(-1), n)), 2 * n
    )


# ---------------------------------------------------------------------------
# text form


class ParseError(ValueError):
    def __init__(self, position: int, message: str, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"position {position}: {message}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class _Scanner:
    """Whitespace-skipping cursor that remembers original positions."""

    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.i)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.i += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            self.fail(f"expected {s!r}")

    def fail(self, message: str):
        self.skip()
        found = self.text[self.i : self.i + 8] or "end of input"
        raise ParseError(self.i, f"{message}, found {found!r}", self.text)

    def integer(self) -> int:
        self.skip()
        start = self.i
        if self.i < len(self.text) and self.text[self.i] in "+-":
            self.i += 1
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        body = self.text[start : self.i]
        if not body.lstrip("+-"):
            self.i = start
            self.fail("expected an integer")
        return int(body)

    def rational(self) -> Fraction:
        num = self.integer()
        if self.accept("/"):
            den = self.integer()
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def word(self) -> str:
        self.skip()
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] == "_"):
            self.i += 1
        return self.text[start : self.i]


def _parse_monomial(sc: _Scanner) -> Monomial:
    sign = -1 if sc.accept("-") else 1
    p2 = t = 0
    seen = False
    while True:
        if sc.accept("p"):
            if sc.accept("^"):
                a = sc.integer()
                if sc.accept("/"):
                    if sc.integer() != 2:
                        sc.fail("p-exponents are written a/2 or a")
                    p2 += a
                else:
                    p2 += 2 * a
            else:
                p2 += 2
        elif sc.accept("t"):
            t += sc.integer() if sc.accept("^") else 1
        elif sc.peek("1"):
            if sc.integer() != 1:
                sc.fail("the only numeric monomial is 1")
        else:
            sc.fail("expected a monomial factor p^a/2, t^b or 1")
        seen = True
        if not sc.accept("*"):
            break
    assert seen
    return Monomial(p2, t, sign)


def _parse_coefficient(sc: _Scanner) -> BlockCoefficient:
    start = sc.i
    name = sc.word()
    if name == "triv":
        return BlockCoefficient.trivial()
    if name == "eps":
        if sc.accept("("):
            label = sc.word()
            if not label:
                sc.fail("expected a label")
            sc.expect(")")
            return BlockCoefficient.quadratic(label)
        return BlockCoefficient.quadratic()
    if name == "unit":
        sc.expect("(")
        sc.expect("t")
        power = 1
        if sc.accept("^"):
            power = sc.integer()
            if power not in (1, -1):
                sc.fail("unit character is t or t^-1")
        sc.expect(")")
        return BlockCoefficient.unit(power)
    if name == "abs":
        sc.expect("(")
        sc.expect("s")
        sc.expect("=")
        s = sc.rational()
        sc.expect(")")
        return BlockCoefficient.abs_power(s)
    if name == "cusp":
        sc.expect("(")
        sc.expect("d")
        sc.expect("=")
        d = sc.integer()
        sc.expect(",")
        sc.expect("type")
        sc.expect("=")
        pos = sc.i
        kind = sc.word()
        if kind not in (ORTHOGONAL, SYMPLECTIC):
            sc.i = pos
            sc.fail(f"expected {ORTHOGONAL} or {SYMPLECTIC}")
        sc.expect(",")
        sc.expect("ev")
        sc.expect("=")
        sc.expect("[")
        ev = [] if sc.peek("]") else [_parse_monomial(sc)]
        while sc.accept(","):
            ev.append(_parse_monomial(sc))
        sc.expect("]")
        sc.expect(")")
        if len(ev) != d:
            raise ParseError(start, f"cusp declares d={d} but lists {len(ev)} eigenvalues", sc.text)
        try:
            return BlockCoefficient(CoefKind.CUSPIDAL, dim=d, duality=kind, eigenvalues=tuple(ev))
        except ShapeError as exc:
            raise ParseError(start, str(exc), sc.text) from None
    sc.i = start
    sc.fail("expected triv, eps, unit(...), abs(...) or cusp(...)")


def _parse_block(sc: _Scanner) -> ArthurBlock:
    sc.skip()
    if sc.peek("sp"):
        coef = BlockCoefficient.trivial()
    else:
        coef = _parse_coefficient(sc)
        if not sc.accept("*"):
            return ArthurBlock(coef, 1)
    sc.expect("sp")
    pos = sc.i
    k = sc.integer()
    if k < 1:
        raise ParseError(pos, "sp_k needs k >= 1", sc.text)
    return ArthurBlock(coef, k)


def parse_parameter(text: str, target_dim: int | None = None) -> ArthurParameter:
    """Parse ``block (+ block)*``; errors carry the offending position."""
    sc = _Scanner(text)
    blocks = [_parse_block(sc)]
    while sc.accept("+"):
        blocks.append(_parse_block(sc))
    sc.skip()
    if sc.i != len(text):
        sc.fail("expected '+' or end of input")
    return ArthurParameter(tuple(blocks), target_dim)


def render_monomial(m: Monomial) -> str:
    factors = []
    if m.p2:
        factors.append(f"p^{m.p2}/2")
    if m.t:
        factors.append(f"t^{m.t}")
    body = "*".join(factors) or "1"
    return ("-" if m.sign < 0 else "") + body


def render_coefficient(c: BlockCoefficient) -> str:
    if c.kind is CoefKind.TRIVIAL:
        return "triv"
    if c.kind is CoefKind.QUADRATIC:
        return f"eps({c.label})" if c.label else "eps"
    if c.kind is CoefKind.UNIT:
        return "unit(t)" if c.t_power == 1 else "unit(t^-1)"
    if c.kind is CoefKind.ABS:
        return f"abs(s={c.s})"
    ev = ",".join(render_monomial(m) for m in c.eigenvalues)
    return f"cusp(d={c.dim},type={c.duality},ev=[{ev}])"


def render_block(b: ArthurBlock) -> str:
    return f"{render_coefficient(b.coefficient)}*sp{b.spin}"


def render(psi: ArthurParameter) -> str:
    return " + ".join(render_block(b) for b in psi.blocks)
