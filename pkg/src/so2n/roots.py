"""Root system D_n, signed-permutation Weyl groups and Levi data.

Coordinates are the characters X_1..X_n of the diagonal torus of SO(2n).
Vectors are tuples of ints (or Fractions); indices in ``Root`` and in
printed output are 1-based, internal permutation arrays are 0-based.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .algebra import Monomial
from .errors import LimitExceeded, ShapeError

WEYL_ENUMERATION_LIMIT = 8

DIFFERENCE = "difference"
SUM = "sum"


@dataclass(frozen=True, order=True)
class Root:
    i: int
    j: int
    kind: str
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")
        if self.kind not in (DIFFERENCE, SUM):
            raise ValueError(f"unknown root kind {self.kind!r}")

    def vector(self, n: int) -> tuple[int, ...]:
        v = [0] * n
        v[self.i - 1] = self.sign
        v[self.j - 1] = -self.sign if self.kind == DIFFERENCE else self.sign
        return tuple(v)

    def __neg__(self) -> Root:
        return Root(self.i, self.j, self.kind, -self.sign)

    def __str__(self) -> str:
        op = "-" if self.kind == DIFFERENCE else "+"
        body = f"X{self.i}{op}X{self.j}"
        return body if self.sign > 0 else f"-({body})"


def root_from_vector(v: Sequence[int]) -> Root:
    support = [k for k, a in enumerate(v) if a]
    if len(support) != 2 or any(abs(v[k]) != 1 for k in support):
        raise ValueError(f"{tuple(v)} is not a root of D_n")
    i, j = support
    kind = DIFFERENCE if v[i] != v[j] else SUM
    return Root(i + 1, j + 1, kind, v[i])


def is_positive(v: Sequence) -> bool:
    """Lex positivity; matches the standard positive system of D_n and C_m."""
    for a in v:
        if a:
            return a > 0
    return False


def vector_label(v: Sequence, symbol: str = "X") -> str:
    parts = []
    for k, a in enumerate(v, start=1):
        if not a:
            continue
        mag = abs(a)
        body = f"{symbol}{k}" if mag == 1 else f"{mag}{symbol}{k}"
        parts.append(("-" if a < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out


@dataclass(frozen=True)
class RootSystemD:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("D_n needs n >= 2")

    def positive_roots(self) -> list[Root]:
        return positive_roots(self)

    def roots(self) -> list[Root]:
        pos = positive_roots(self)
        return pos + [-a for a in pos]

    def simple_roots(self) -> list[tuple[int, ...]]:
        n = self.n
        out = []
        for i in range(n - 1):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            out.append(tuple(v))
        v = [0] * n
        v[n - 2], v[n - 1] = 1, 1
        out.append(tuple(v))
        return out

    def rho(self) -> tuple[int, ...]:
        return rho(self)


def positive_roots(R: RootSystemD) -> list[Root]:
    return [Root(i, j, kind) for i in range(1, R.n + 1) for j in range(i + 1, R.n + 1) for kind in (DIFFERENCE, SUM)]


def rho(R: RootSystemD) -> tuple[int, ...]:
    total = [Fraction(0)] * R.n
    for a in positive_roots(R):
        for k, x in enumerate(a.vector(R.n)):
            total[k] += Fraction(x, 2)
    return tuple(int(x) for x in total)


def simple_coordinates(v: Sequence, n: int) -> tuple[Fraction, ...]:
    """Coefficients of v in the simple roots e_i - e_{i+1}, e_{n-1} + e_n."""
    partial = []
    acc = Fraction(0)
    for a in v:
        acc += a
        partial.append(acc)
    coords = list(partial[: n - 2])
    coords.append(partial[n - 2] - partial[n - 1] / 2)
    coords.append(partial[n - 1] / 2)
    return tuple(coords)


def coroot(alpha: Root, n: int) -> tuple[Monomial, ...]:
    """The torus point a_alpha: p in slot i, p^-1 (difference) or p (sum) in slot j."""
    p = Monomial(p2=2)
    pt = [Monomial()] * n
    pt[alpha.i - 1] = p
    pt[alpha.j - 1] = p.inverse() if alpha.kind == DIFFERENCE else p
    if alpha.sign < 0:
        pt = [m.inverse() for m in pt]
    return tuple(pt)


# ---------------------------------------------------------------------------
# signed permutations


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: e_i maps to signs[i] * e_perm[i] (0-based)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.signs) != len(self.perm):
            raise ValueError(f"not a signed permutation: {self.perm}, {self.signs}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, n: int) -> WeylElement:
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_images(cls, images: Sequence[int]) -> WeylElement:
        """From signed 1-based images, e.g. (2, -1) sends e1 to e2, e2 to -e1."""
        return cls(tuple(abs(k) - 1 for k in images), tuple(1 if k > 0 else -1 for k in images))

    @property
    def n(self) -> int:
        return len(self.perm)

    def is_even(self) -> bool:
        """Membership in W(D_n): an even number of sign changes."""
        return self.signs.count(-1) % 2 == 0

    def sign_character(self) -> int:
        """det of the linear map; the sign character of the reflection group."""
        seen = [False] * self.n
        parity = 0
        for start in range(self.n):
            if seen[start]:
                continue
            k, length = start, 0
            while not seen[k]:
                seen[k] = True
                k = self.perm[k]
                length += 1
            parity += length - 1
        s = -1 if parity % 2 else 1
        for x in self.signs:
            s *= x
        return s

    def apply(self, v: Sequence) -> tuple:
        out = [0] * self.n
        for i, a in enumerate(v):
            out[self.perm[i]] = self.signs[i] * a
        return tuple(out)

    def act_on_torus(self, x: Sequence) -> tuple:
        """x_i moves to slot perm[i], inverted when the sign is -1."""
        out: list = [None] * self.n
        for i, xi in enumerate(x):
            out[self.perm[i]] = xi if self.signs[i] > 0 else xi.inverse()
        return tuple(out)

    def monomial_images(self) -> list[tuple[int, ...]]:
        """Exponent images of the variables, for ``LaurentPoly.substitute_monomials``."""
        out = []
        for i in range(self.n):
            v = [0] * self.n
            v[self.perm[i]] = self.signs[i]
            out.append(tuple(v))
        return out

    def __mul__(self, other: WeylElement) -> WeylElement:
        """Composition: (self * other)(v) = self(other(v))."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(self.n))
        return WeylElement(perm, signs)

    def inverse(self) -> WeylElement:
        perm = [0] * self.n
        signs = [1] * self.n
        for i, k in enumerate(self.perm):
            perm[k] = i
            signs[k] = self.signs[i]
        return WeylElement(tuple(perm), tuple(signs))

    def length(self) -> int:
        n = self.n
        return sum(1 for a in positive_roots(RootSystemD(n)) if not is_positive(self.apply(a.vector(n))))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(s == 1 for s in self.signs)

    def __str__(self) -> str:
        return "[" + ", ".join(str(s * (k + 1)) for k, s in zip(self.perm, self.signs)) + "]"


ExtendedWeylElement = WeylElement


def weyl_order(n: int, extended: bool = False) -> int:
    return 2 ** (n if extended else n - 1) * factorial(n)


def enumerate_weyl(n: int, extended: bool = False, limit: int = WEYL_ENUMERATION_LIMIT) -> Iterator[WeylElement]:
    """All of W(D_n), or of the extended group when ``extended``."""
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the enumeration limit {limit}")
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            if extended or signs.count(-1) % 2 == 0:
                yield WeylElement(perm, signs)


def signed_permutation_search(
    n: int,
    accept: Callable[[list[tuple[int, int]]], bool],
    extended: bool = False,
) -> Iterator[WeylElement]:
    """Complete backtracking search over signed permutations.

    ``accept`` sees the partial assignment [(target, sign), ...] for
    e_1..e_k after each step and may prune.  Nothing is skipped unless
    ``accept`` rejects it, so the result equals a filtered full scan.
    """
    assignment: list[tuple[int, int]] = []
    used = [False] * n

    def rec():
        if len(assignment) == n:
            signs = tuple(s for _, s in assignment)
            if extended or signs.count(-1) % 2 == 0:
                yield WeylElement(tuple(k for k, _ in assignment), signs)
            return
        for k in range(n):
            if used[k]:
                continue
            for s in (1, -1):
                assignment.append((k, s))
                if accept(assignment):
                    used[k] = True
                    yield from rec()
                    used[k] = False
                assignment.pop()

    yield from rec()


# ---------------------------------------------------------------------------
# Levi subgroups


PRODUCT_GL2 = "ProductGL2"
GLN = "GLn"
SO_PLUS_TORUS = "SOPlusTorus"


@dataclass(frozen=True)
class LeviDescriptor:
    shape: str
    n: int
    blocks: tuple[tuple[int, ...], ...]
    so_rank: int = 0
    simple_roots: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @classmethod
    def product_gl2(cls, n: int) -> LeviDescriptor:
        if n % 2:
            raise ShapeError("a product of GL2 blocks needs n even")
        blocks = tuple((2 * i + 1, 2 * i + 2) for i in range(n // 2))
        simple = []
        for a, b in blocks:
            v = [0] * n
            v[a - 1], v[b - 1] = 1, -1
            simple.append(tuple(v))
        return cls(PRODUCT_GL2, n, blocks, 0, tuple(simple))

    @classmethod
    def gl_n(cls, n: int) -> LeviDescriptor:
        return cls(GLN, n, (tuple(range(1, n + 1)),), 0, tuple(RootSystemD(n).simple_roots()[: n - 1]))

    @classmethod
    def so_plus_torus(cls, n: int, k: int) -> LeviDescriptor:
        """SO(2k) x GL1^(n-k); k = n is the whole group, k = 0 the torus."""
        if not 0 <= k <= n or k == 1:
            raise ShapeError(f"SO(2k) factor needs k = 0 or 2 <= k <= n, got k={k}")
        torus = tuple((i,) for i in range(1, n - k + 1))
        blocks = torus + ((tuple(range(n - k + 1, n + 1)),) if k else ())
        simple = []
        if k >= 2:
            for i in range(n - k, n - 1):
                v = [0] * n
                v[i], v[i + 1] = 1, -1
                simple.append(tuple(v))
            v = [0] * n
            v[n - 2], v[n - 1] = 1, 1
            simple.append(tuple(v))
        return cls(SO_PLUS_TORUS, n, blocks, k, tuple(simple))

    @property
    def m(self) -> int:
        if self.shape != PRODUCT_GL2:
            raise ShapeError(f"{self.shape} has no block count m")
        return self.n // 2

    def roots(self) -> set[tuple[int, ...]]:
        """All roots of the Levi (both signs)."""
        R = RootSystemD(self.n)
        span = {tuple(v) for v in self.simple_roots}
        out = set()
        for a in R.roots():
            v = a.vector(self.n)
            c = simple_coordinates(v, self.n)
            simple = R.simple_roots()
            support = {tuple(simple[k]) for k, x in enumerate(c) if x}
            if support <= span:
                out.add(v)
        return out

    def check_standard(self):
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(1, self.n + 1)):
            raise ShapeError("Levi blocks must partition 1..n")
        simple = set(RootSystemD(self.n).simple_roots())
        if not set(self.simple_roots) <= simple:
            raise ShapeError("Levi is not standard: its simple roots are not simple in D_n")


def _image(partial: list[tuple[int, int]], v: Sequence[int], n: int) -> tuple[int, ...] | None:
    """w(v) if every coordinate in v's support is already assigned."""
    out = [0] * n
    for i, a in enumerate(v):
        if a:
            if i >= len(partial):
                return None
            k, s = partial[i]
            out[k] += s * a
    return tuple(out)


def relative_weyl_set(M: LeviDescriptor, R: RootSystemD | None = None) -> list[WeylElement]:
    """W(M): elements w with w(simple roots of M) inside the simple roots of G.

    Those are exactly the minimal-length coset representatives w of W/W_M
    with wMw^-1 standard.  The search is exhaustive over W(D_n), pruned as
    soon as an image of a simple root of M is known not to be simple.
    """
    R = R or RootSystemD(M.n)
    if R.n != M.n:
        raise ShapeError("Levi and root system have different ranks")
    M.check_standard()
    n = M.n
    target = set(R.simple_roots())
    by_last: dict[int, list[tuple[int, ...]]] = {}
    for v in M.simple_roots:
        last = max(i for i, a in enumerate(v) if a)
        by_last.setdefault(last, []).append(v)

    def accept(partial):
        for v in by_last.get(len(partial) - 1, ()):
            if _image(partial, v, n) not in target:
                return False
        return True

    return list(signed_permutation_search(n, accept))


# ---------------------------------------------------------------------------
# restricted roots of the product of GL2 blocks (block coordinates)


def _block_vector(m: int, entries: dict[int, int]) -> tuple[int, ...]:
    v = [0] * m
    for k, a in entries.items():
        v[k] += a
    return tuple(v)


def restricted_positive_roots(M: LeviDescriptor) -> list[tuple[int, ...]]:
    """X_i - X_j, X_i + X_j (i < j) and 2X_i in block coordinates."""
    m = M.m
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            out.append(_block_vector(m, {i: 1, j: -1}))
            out.append(_block_vector(m, {i: 1, j: 1}))
    for i in range(m):
        out.append(_block_vector(m, {i: 2}))
    return out


def restricted_simple_roots(M: LeviDescriptor) -> list[tuple[int, ...]]:
    if M.shape != PRODUCT_GL2:
        raise ShapeError(f"restricted simple roots are only implemented for {PRODUCT_GL2}")
    m = M.m
    out = [_block_vector(m, {i: 1, i + 1: -1}) for i in range(m - 1)]
    out.append(_block_vector(m, {m - 1: 2}))
    return out


def restrict_to_blocks(v: Sequence[int], M: LeviDescriptor) -> tuple[int, ...]:
    """Restrict a character of the torus to the centre of M (block determinants)."""
    out = [0] * len(M.blocks)
    for b, block in enumerate(M.blocks):
        out[b] = sum(v[i - 1] for i in block)
    return tuple(out)


def block_action(w: WeylElement, M: LeviDescriptor) -> WeylElement:
    """The signed permutation of block characters induced by w in W(M)."""
    if M.shape != PRODUCT_GL2:
        raise ShapeError("block action is defined for products of GL2 blocks")
    m = M.m
    perm, signs = [], []
    for b in range(m):
        a1, s1 = w.perm[2 * b], w.signs[2 * b]
        a2, s2 = w.perm[2 * b + 1], w.signs[2 * b + 1]
        if s1 > 0 and a1 % 2 == 0 and (a2, s2) == (a1 + 1, 1):
            perm.append(a1 // 2)
            signs.append(1)
        elif s1 < 0 and a1 % 2 == 1 and (a2, s2) == (a1 - 1, -1):
            perm.append(a1 // 2)
            signs.append(-1)
        else:
            raise ShapeError(f"{w} does not normalise the GL2 blocks")
    return WeylElement(tuple(perm), tuple(signs))


def elementary_symmetries(M: LeviDescriptor) -> list[WeylElement]:
    """Generators of W(M): adjacent block swaps and the flip of the last block."""
    n, m = M.n, M.m
    gens = []
    for b in range(m - 1):
        perm = list(range(n))
        perm[2 * b], perm[2 * b + 2] = 2 * b + 2, 2 * b
        perm[2 * b + 1], perm[2 * b + 3] = 2 * b + 3, 2 * b + 1
        gens.append(WeylElement(tuple(perm), (1,) * n))
    gens.append(_flip_blocks(n, [m - 1]))
    return gens


def _flip_blocks(n: int, blocks: Sequence[int]) -> WeylElement:
    perm = list(range(n))
    signs = [1] * n
    for b in blocks:
        perm[2 * b], perm[2 * b + 1] = 2 * b + 1, 2 * b
        signs[2 * b] = signs[2 * b + 1] = -1
    return WeylElement(tuple(perm), tuple(signs))


def longest_relative_element(M: LeviDescriptor) -> WeylElement:
    """w0 of W(M): acts as -1 on every block character."""
    return _flip_blocks(M.n, range(M.m))


def negated_roots(w: WeylElement, roots: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """The positive roots among ``roots`` that w sends to negative roots."""
    return [tuple(a) for a in roots if is_positive(a) and not is_positive(w.apply(a))]


def generated_group(gens: Sequence[WeylElement], n: int) -> set[WeylElement]:
    seen = {WeylElement.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen
