"""Exact arithmetic: monomials in p^(1/2) and t, Laurent polynomials,
affine forms and p-adic absolute values.

Everything here is immutable and exact.  Rationals are the stdlib
``fractions.Fraction``; integers are Python ints, so nothing overflows.

A ``Monomial`` is ``sign * p^(p2/2) * t^t`` with ``p`` and ``t`` formal.
Summing monomials with rational coefficients gives a ``PTExpr``, the
value type of evaluating a Laurent polynomial at a Hecke matrix.

>>> a = Monomial(p2=3, t=1)
>>> str(a * a.inverse())
'1'
>>> x = LaurentPoly.variable("x1", ("x1",))
>>> str(laurent_eval(x + x ** -1, [Monomial(p2=2)]))
'p + p^-1'
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, permutations
from operator import add, sub
from typing import Union

from .errors import ArityError, InexactDivision

Number = Union[int, Fraction]


def as_fraction(x: Number | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _power_text(base: str, exp: Fraction) -> str:
    if exp == 1:
        return base
    if exp.denominator == 1:
        return f"{base}^{exp.numerator}"
    return f"{base}^({exp})"


# ---------------------------------------------------------------------------
# monomials and formal expressions in p, t


@dataclass(frozen=True)
class Monomial:
    """``sign * p^(p2/2) * t^t``; ``p2`` is twice the p-exponent."""

    p2: int = 0
    t: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def p_power(cls, exponent: Number, t: int = 0, sign: int = 1) -> Monomial:
        twice = 2 * as_fraction(exponent)
        if twice.denominator != 1:
            raise ValueError(f"p-exponent {exponent} is not a half-integer")
        return cls(int(twice), t, sign)

    @property
    def p_exp(self) -> Fraction:
        return Fraction(self.p2, 2)

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.p2 + other.p2, self.t + other.t, self.sign * other.sign)

    def __truediv__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> Monomial:
        sign = self.sign if k % 2 else 1
        return Monomial(self.p2 * k, self.t * k, sign)

    def inverse(self) -> Monomial:
        return Monomial(-self.p2, -self.t, self.sign)

    def is_one(self) -> bool:
        return self.p2 == 0 and self.t == 0 and self.sign == 1

    def is_self_inverse(self) -> bool:
        return self.p2 == 0 and self.t == 0

    def sort_key(self) -> tuple[int, int, int]:
        return (self.p2, self.t, self.sign)

    def magnitude_exponent(self, t_exponent: Number = 0) -> Fraction:
        """Exponent e with |self| = p^e once |t| = p^t_exponent."""
        return self.p_exp + self.t * as_fraction(t_exponent)

    def to_expr(self) -> PTExpr:
        return PTExpr({(self.p2, self.t): Fraction(self.sign)})

    def __str__(self) -> str:
        return str(self.to_expr())


class PTExpr:
    """Finite sum of rational multiples of p^(a/2) t^b.

    Keys are ``(a, b)``; zero coefficients are never stored.  Equality is
    equality of formal expressions, which is the right notion because p is
    a formal variable and t is treated as transcendental.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Number] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self._terms = clean

    @classmethod
    def constant(cls, c: Number) -> PTExpr:
        return cls({(0, 0): c})

    @staticmethod
    def coerce(x) -> PTExpr:
        if isinstance(x, PTExpr):
            return x
        if isinstance(x, Monomial):
            return x.to_expr()
        return PTExpr.constant(as_fraction(x))

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def __add__(self, other) -> PTExpr:
        other = PTExpr.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return PTExpr(out)

    __radd__ = __add__

    def __neg__(self) -> PTExpr:
        return PTExpr({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> PTExpr:
        return self + (-PTExpr.coerce(other))

    def __rsub__(self, other) -> PTExpr:
        return PTExpr.coerce(other) - self

    def __mul__(self, other) -> PTExpr:
        other = PTExpr.coerce(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return PTExpr(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            other = PTExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def value_at(self, p: int, t: Number | None = None) -> Fraction:
        """Exact rational value at a concrete prime (and rational t)."""
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            if a % 2:
                raise ValueError("p^(1/2) appears with nonzero coefficient; value is irrational")
            if b and t is None:
                raise ValueError("expression depends on t; pass a value for t")
            term = c * Fraction(p) ** (a // 2)
            if b:
                term *= as_fraction(t) ** b
            total += term
        return total

    def float_at(self, p: float, t: float = 1.0) -> float:
        return float(sum(float(c) * p ** (a / 2) * t ** b for (a, b), c in self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (a, b), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            factors = []
            if a:
                factors.append(_power_text("p", Fraction(a, 2)))
            if b:
                factors.append(_power_text("t", Fraction(b)))
            body = "*".join(factors)
            if not body:
                text = str(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = f"{abs(c)}*{body}"
            pieces.append(("-" if c < 0 else "+", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Laurent polynomials


def default_variables(n: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


class LaurentPoly:
    """Multivariate Laurent polynomial with rational coefficients."""

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], Number] | None = None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nv:
                raise ArityError(f"exponent vector {exps} does not match {nv} variables")
            c = as_fraction(c)
            if c:
                clean[tuple(exps)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> LaurentPoly:
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, c: Number, variables: Sequence[str]) -> LaurentPoly:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, exps: Sequence[int], variables: Sequence[str], c: Number = 1) -> LaurentPoly:
        return cls(variables, {tuple(exps): c})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> LaurentPoly:
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: LaurentPoly):
        if other.variables != self.variables:
            raise ArityError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.constant(as_fraction(other), self.variables)

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            c = as_fraction(other)
            if not c:
                return LaurentPoly._raw(self.variables, {})
            return LaurentPoly._raw(self.variables, {e: c * v for e, v in self._terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly._raw(self.variables, {tuple(a * k for a in e): 1 / c ** -k})
        result = LaurentPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self._terms == other._terms
        try:
            return self == LaurentPoly.constant(as_fraction(other), self.variables)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self._terms.items())))

    def substitute_monomials(self, images: Sequence[Sequence[int]], variables: Sequence[str]) -> LaurentPoly:
        """Send variable i to the monomial with exponent vector ``images[i]``."""
        if len(images) != self.nvars:
            raise ArityError(f"need {self.nvars} images, got {len(images)}")
        width = len(variables)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self._terms.items():
            new = [0] * width
            for a, img in zip(e, images):
                if a:
                    for j, b in enumerate(img):
                        new[j] += a * b
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(variables, out)

    def permute_variables(self, perm: Sequence[int]) -> LaurentPoly:
        """Rename x_i to x_perm[i] (0-based)."""
        out = {}
        for e, c in self._terms.items():
            new = [0] * self.nvars
            for i, a in enumerate(e):
                new[perm[i]] = a
            out[tuple(new)] = c
        return LaurentPoly._raw(self.variables, out)

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        """Quotient self / divisor, raising InexactDivision on a remainder.

        Long division by leading terms in lex order.  Lex is a group order
        on Z^n, so leading and trailing terms are multiplicative and every
        quotient exponent lies between ``min(f)-min(g)`` and
        ``max(f)-max(g)``; falling below the lower bound proves inexactness.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly._raw(self.variables, {})
        g_lead = max(divisor._terms)
        g_coef = divisor._terms[g_lead]
        floor = tuple(map(sub, min(self._terms), min(divisor._terms)))
        # integer fast path: unit leading coefficient and integral data
        integral = abs(g_coef) == 1 and all(
            c.denominator == 1 for c in chain(self._terms.values(), divisor._terms.values())
        )
        conv = int if integral else (lambda c: c)
        g_items = [(e, conv(c)) for e, c in divisor._terms.items()]
        g_coef = conv(g_coef)
        rem = {e: conv(c) for e, c in self._terms.items()}
        quotient = {}
        while rem:
            lead = max(rem)
            shift = tuple(map(sub, lead, g_lead))
            if shift < floor:
                raise InexactDivision("Laurent division left a remainder")
            q = rem[lead] * g_coef if integral else rem[lead] / g_coef
            quotient[shift] = Fraction(q)
            for e, c in g_items:
                key = tuple(map(add, e, shift))
                v = rem.get(key, 0) - q * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return LaurentPoly._raw(self.variables, quotient)

    def eval_rational(self, point: Sequence[Number]) -> Fraction:
        if len(point) != self.nvars:
            raise ArityError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, a in zip(pt, e):
                if a:
                    term *= x ** a
            total += term
        return total

    def __call__(self, point: Sequence[Monomial]) -> PTExpr:
        return laurent_eval(self, point)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            factors = [_power_text(v, Fraction(a)) for v, a in zip(self.variables, e) if a]
            body = "*".join(factors)
            if not body:
                text = str(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    __repr__ = __str__


def laurent_eval(f: LaurentPoly, point: Sequence[Monomial]) -> PTExpr:
    """Substitute monomials for the variables and collect like terms."""
    if len(point) != f.nvars:
        raise ArityError(f"point has {len(point)} coordinates, expected {f.nvars}")
    out: dict[tuple[int, int], Fraction] = {}
    for e, c in f.terms.items():
        a = b = 0
        sign = 1
        for m, k in zip(point, e):
            if k:
                a += m.p2 * k
                b += m.t * k
                if m.sign < 0 and k % 2:
                    sign = -sign
        out[(a, b)] = out.get((a, b), 0) + sign * c
    return PTExpr(out)


def is_symmetric(f: LaurentPoly) -> bool:
    """Invariance under all permutations of the variables.

    Checked on the generators (1 2) and (1 2 ... k) of the symmetric group.
    """
    k = f.nvars
    if k < 2:
        return True
    swap = [1, 0] + list(range(2, k))
    cycle = [(i + 1) % k for i in range(k)]
    return f.permute_variables(swap) == f and f.permute_variables(cycle) == f


def restrict_theta(f: LaurentPoly, n: int, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Restrict a symmetric function of 2n variables to the SO(2n) torus.

    Variable i+n becomes the inverse of variable n+1-i, so the 2n
    arguments read (x_1, ..., x_n, x_n^-1, ..., x_1^-1).
    """
    if f.nvars != 2 * n:
        raise ArityError(f"expected {2 * n} variables, got {f.nvars}")
    if not is_symmetric(f):
        raise ValueError("restriction needs a function symmetric in all 2n variables")
    variables = tuple(variables) if variables else default_variables(n)
    images = []
    for i in range(n):
        images.append(tuple(1 if j == i else 0 for j in range(n)))
    for i in range(n):
        images.append(tuple(-1 if j == n - 1 - i else 0 for j in range(n)))
    return f.substitute_monomials(images, variables)


def power_sum(k: int, variables: Sequence[str]) -> LaurentPoly:
    nv = len(variables)
    return LaurentPoly(variables, {tuple(k if j == i else 0 for j in range(nv)): 1 for i in range(nv)})


def elementary_symmetric(k: int, variables: Sequence[str]) -> LaurentPoly:
    from itertools import combinations

    nv = len(variables)
    terms = {}
    for subset in combinations(range(nv), k):
        terms[tuple(1 if j in subset else 0 for j in range(nv))] = 1
    return LaurentPoly(variables, terms)


def all_permutation_images(f: LaurentPoly) -> Iterable[LaurentPoly]:
    """Every permuted copy of f; used by brute-force symmetry checks."""
    for perm in permutations(range(f.nvars)):
        yield f.permute_variables(perm)


# ---------------------------------------------------------------------------
# affine forms in the s-variables


@dataclass(frozen=True)
class AffineForm:
    coefficients: tuple[tuple[str, Fraction], ...] = ()
    constant: Fraction = Fraction(0)

    @classmethod
    def build(cls, coefficients: Mapping[str, Number] | None = None, constant: Number = 0) -> AffineForm:
        items = tuple(sorted((k, as_fraction(v)) for k, v in (coefficients or {}).items() if v))
        return cls(items, as_fraction(constant))

    @classmethod
    def var(cls, name: str) -> AffineForm:
        return cls.build({name: 1})

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coefficients)

    def __add__(self, other) -> AffineForm:
        if isinstance(other, AffineForm):
            merged = self.as_dict()
            for k, v in other.coefficients:
                merged[k] = merged.get(k, 0) + v
            return AffineForm.build(merged, self.constant + other.constant)
        return AffineForm.build(self.as_dict(), self.constant + as_fraction(other))

    __radd__ = __add__

    def __neg__(self) -> AffineForm:
        return self * -1

    def __sub__(self, other) -> AffineForm:
        return self + (-other if isinstance(other, AffineForm) else -as_fraction(other))

    def __mul__(self, c: Number) -> AffineForm:
        c = as_fraction(c)
        return AffineForm.build({k: v * c for k, v in self.coefficients}, self.constant * c)

    __rmul__ = __mul__

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        total = self.constant
        for k, v in self.coefficients:
            if k not in point:
                raise ArityError(f"no value for variable {k}")
            total += v * as_fraction(point[k])
        return total

    def __str__(self) -> str:
        parts = []
        for k, v in self.coefficients:
            mag = abs(v)
            body = k if mag == 1 else f"{mag}*{k}"
            parts.append(("-" if v < 0 else "+", body))
        if self.constant or not parts:
            parts.append(("-" if self.constant < 0 else "+", str(abs(self.constant))))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# p-adic valuations


def p_valuation(q: Number, p: int) -> int:
    q = as_fraction(q)
    if not q:
        raise ValueError("the valuation of 0 is infinite")
    v = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class ValuedNumber:
    """A nonzero-or-zero rational tagged with the prime of its absolute value.

    Torus coordinates are of the form +-p^k; products and differences
    (discriminant factors) are general rationals whose valuation is still
    exact.
    """

    value: Fraction
    p: int

    @classmethod
    def power(cls, p: int, k: int, sign: int = 1) -> ValuedNumber:
        return cls(sign * Fraction(p) ** k, p)

    def valuation(self) -> int:
        return p_valuation(self.value, self.p)

    def is_p_power(self) -> bool:
        if not self.value:
            return False
        v = self.valuation()
        return abs(self.value) == Fraction(self.p) ** v

    def _other(self, other) -> Fraction:
        if isinstance(other, ValuedNumber):
            if other.p != self.p:
                raise ValueError(f"mixing primes {self.p} and {other.p}")
            return other.value
        return as_fraction(other)

    def __mul__(self, other) -> ValuedNumber:
        return ValuedNumber(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> ValuedNumber:
        return ValuedNumber(self.value / self._other(other), self.p)

    def __add__(self, other) -> ValuedNumber:
        return ValuedNumber(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other) -> ValuedNumber:
        return ValuedNumber(self.value - self._other(other), self.p)

    def __neg__(self) -> ValuedNumber:
        return ValuedNumber(-self.value, self.p)

    def __pow__(self, k: int) -> ValuedNumber:
        return ValuedNumber(self.value ** k, self.p)

    def inverse(self) -> ValuedNumber:
        return ValuedNumber(1 / self.value, self.p)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return str(self.value)


def padic_abs(x: ValuedNumber) -> Monomial:
    """|x|_p = p^(-val x), as a monomial in p."""
    if not x.value:
        raise ValueError("|0|_p is not a monomial")
    return Monomial(p2=-2 * x.valuation())


def padic_abs_sqrt(x: ValuedNumber) -> Monomial:
    """|x|_p^(1/2), exact thanks to half-integer exponents."""
    if not x.value:
        raise ValueError("|0|_p is not a monomial")
    return Monomial(p2=-x.valuation())
