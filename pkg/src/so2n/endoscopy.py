"""Twisted endoscopy between SO(2n) and (GL(2n), theta) on split tori.

Conventions
-----------
* SO side: t = (x_1, ..., x_n, x_n^-1, ..., x_1^-1); roots of D_n.
* GL side: the theta-torus element (x_1, ..., x_n, 1, ..., 1).
* ``disc_M`` is the Weyl discriminant of the Levi M: the product of
  x^a - 1 over the roots *of* M.  The product over the roots outside M is
  ``disc_M_complement``; the two multiply to ``disc_SO``.
* Absolute values are p-adic and exact.  A character value is a formal sum
  of rational powers of p (``PPowerSum``) because |det|^s with s = 1/3
  leaves the half-integer lattice.

GL-side discriminants are computed from the linear map Ad(delta) o theta on
gl(2n), not from root products, so the character identity compares two
independent calculations.  Only split tori are covered: an element that is
not conjugate into a split torus of M has an empty embedding set and the
character is 0.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .algebra import LaurentPoly, Monomial, Number, PTExpr, ValuedNumber, as_fraction, is_symmetric, laurent_eval, restrict_theta
from .errors import ArityError, NonRegularError
from .params import ArthurParameter, hecke_matrix_of
from .roots import LeviDescriptor, RootSystemD

# the other Kottwitz-Shelstad factors are 1 in this setting
DELTA_I = DELTA_II = DELTA_III = 1
DISTRIBUTION_FACTOR_NOTE = "distribution-level factor (1/2)|2^n|_F is not recomputed"


# ---------------------------------------------------------------------------
# torus elements


@dataclass(frozen=True)
class TorusElementSO:
    coords: tuple[ValuedNumber, ...]
    split: bool = True

    def __post_init__(self):
        if len({c.p for c in self.coords}) > 1:
            raise ValueError("coordinates use different primes")

    @classmethod
    def from_values(cls, p: int, values: Sequence[Number]) -> TorusElementSO:
        return cls(tuple(ValuedNumber(as_fraction(v), p) for v in values))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def p(self) -> int:
        return self.coords[0].p

    def values(self) -> tuple[Fraction, ...]:
        return tuple(c.value for c in self.coords)

    def full(self) -> tuple[Fraction, ...]:
        x = self.values()
        return x + tuple(1 / v for v in reversed(x))

    def is_regular(self) -> bool:
        return all(v != 1 for v in root_values(self.values(), RootSystemD(self.n).roots()))

    def outer(self) -> TorusElementSO:
        """Image under the outer automorphism alpha: x_n -> x_n^-1."""
        return TorusElementSO(self.coords[:-1] + (self.coords[-1].inverse(),), self.split)


@dataclass(frozen=True)
class ThetaTorusElementGL:
    coords: tuple[ValuedNumber, ...]

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def p(self) -> int:
        return self.coords[0].p

    def values(self) -> tuple[Fraction, ...]:
        return tuple(c.value for c in self.coords)

    def full(self) -> tuple[Fraction, ...]:
        return self.values() + (Fraction(1),) * self.n

    def is_strongly_theta_regular(self) -> bool:
        """Regular image on SO(2n) and no coordinate equal to -1.

        The two notions are kept apart; whether they always agree is left
        open.
        """
        x = self.values()
        return norm_inverse(self).is_regular() and all(v != -1 for v in x)


@dataclass(frozen=True)
class NormPair:
    gl_side: ThetaTorusElementGL
    so_side: TorusElementSO

    def __post_init__(self):
        if self.gl_side.values() != self.so_side.values():
            raise ValueError("the two sides of a norm pair have the same coordinates")

    @classmethod
    def of(cls, t: TorusElementSO) -> NormPair:
        return cls(norm(t), t)

    def is_regular(self) -> bool:
        return self.so_side.is_regular() and self.gl_side.is_strongly_theta_regular()


def norm(t: TorusElementSO) -> ThetaTorusElementGL:
    """(x, x^-1 reversed) -> (x, 1, ..., 1)."""
    return ThetaTorusElementGL(t.coords)


def norm_inverse(x: ThetaTorusElementGL) -> TorusElementSO:
    return TorusElementSO(x.coords)


# ---------------------------------------------------------------------------
# ordinary discriminants


def root_values(x: Sequence[Fraction], roots) -> Iterator[Fraction]:
    n = len(x)
    for a in roots:
        v = a.vector(n) if hasattr(a, "vector") else a
        out = Fraction(1)
        for xi, k in zip(x, v):
            if k:
                out *= xi**k
        yield out


def _product_minus_one(x: Sequence[Fraction], roots, what: str, p: int) -> ValuedNumber:
    total = Fraction(1)
    for v in root_values(x, roots):
        if v == 1:
            raise NonRegularError(f"{what}: a root takes the value 1")
        total *= v - 1
    return ValuedNumber(total, p)


def disc_SO(t: TorusElementSO, n: int | None = None) -> ValuedNumber:
    """prod over all roots a of D_n of (x^a - 1)."""
    if n is not None and n != t.n:
        raise ArityError(f"element has {t.n} coordinates, expected {n}")
    return _product_minus_one(t.values(), RootSystemD(t.n).roots(), "disc_SO", t.p)


def levi_roots(M: LeviDescriptor) -> list[tuple[int, ...]]:
    return sorted(M.roots())


def disc_M(t: TorusElementSO, M: LeviDescriptor) -> ValuedNumber:
    """Weyl discriminant of M: prod over the roots of M of (x^a - 1)."""
    if M.n != t.n:
        raise ArityError("Levi and element have different ranks")
    return _product_minus_one(t.values(), levi_roots(M), "disc_M", t.p)


def disc_M_complement(t: TorusElementSO, M: LeviDescriptor) -> ValuedNumber:
    """prod over the roots outside M of (x^a - 1)."""
    inside = M.roots()
    outside = [a.vector(t.n) for a in RootSystemD(t.n).roots() if a.vector(t.n) not in inside]
    return _product_minus_one(t.values(), outside, "disc_M_complement", t.p)


def disc_twisted(x: ThetaTorusElementGL) -> ValuedNumber:
    """prod_(i<j) (x_i x_j - 1)(x_i^-1 x_j^-1 - 1) * prod_i (x_i + 1)(x_i^-1 + 1)."""
    v = x.values()
    total = Fraction(1)
    for i in range(x.n):
        for j in range(i + 1, x.n):
            total *= (v[i] * v[j] - 1) * (1 / (v[i] * v[j]) - 1)
    for xi in v:
        total *= (xi + 1) * (1 / xi + 1)
    if not total:
        raise NonRegularError("disc_twisted: a factor vanishes")
    return ValuedNumber(total, x.p)


def disc_levi_theta_closed_form(x: ThetaTorusElementGL) -> ValuedNumber:
    """prod over ordered pairs i != j of (1 - x_i / x_j)."""
    v = x.values()
    total = Fraction(1)
    for i in range(x.n):
        for j in range(x.n):
            if i != j:
                total *= 1 - v[i] / v[j]
    if not total:
        raise NonRegularError("twisted Levi discriminant vanishes")
    return ValuedNumber(total, x.p)


# ---------------------------------------------------------------------------
# twisted discriminants from the linear map Ad(delta) o theta


GL = "gl"
LEVI = "l"


def twisted_cycles(delta: Sequence[Fraction], part: str = GL) -> list[tuple[int, Fraction]]:
    """Cycles (length, weight) of T = Ad(delta) o theta on a basis of ``part``.

    theta(X) = -w X^T w^-1 with w swapping the two halves of the basis, so T
    sends E_ab to -(delta_b' / delta_a') E_b'a' where i' = i + n mod 2n.
    T is a weighted permutation of matrix units; ``part`` is all of gl(2n)
    or the block-diagonal Levi gl(n) x gl(n).
    """
    size = len(delta)
    h = size // 2
    flip = [(i + h) % size for i in range(size)]

    def in_part(a, b):
        return part == GL or (a < h) == (b < h)

    seen = set()
    out = []
    for a in range(size):
        for b in range(size):
            if (a, b) in seen or not in_part(a, b):
                continue
            length, weight = 0, Fraction(1)
            cur = (a, b)
            while cur not in seen:
                seen.add(cur)
                i, j = cur
                weight *= -delta[flip[j]] / delta[flip[i]]
                cur = (flip[j], flip[i])
                length += 1
            out.append((length, weight))
    return out


def twisted_discriminant(delta: Sequence[Fraction], part: str = GL) -> tuple[Fraction, Fraction]:
    """(D, D^1): lowest coefficient of det((u+1) - T) in u, and the same
    with the twisted centraliser's contribution removed.

    A cycle of length L and weight w contributes (u+1)^L - w: the constant
    1 - w when w != 1, and L*u when w == 1.
    """
    full = strict = Fraction(1)
    for length, w in twisted_cycles(delta, part):
        if w == 1:
            full *= length
        else:
            full *= 1 - w
            strict *= 1 - w
    return full, strict


def _delta(x: ThetaTorusElementGL) -> tuple[Fraction, ...]:
    return x.full()


def disc_gl_theta(x: ThetaTorusElementGL) -> ValuedNumber:
    """D^1_(GL, theta)(x) from Ad(delta) o theta on gl(2n)."""
    if not x.is_strongly_theta_regular():
        raise NonRegularError("element is not strongly theta-regular")
    return ValuedNumber(twisted_discriminant(_delta(x), GL)[1], x.p)


def disc_gl_theta_full(x: ThetaTorusElementGL) -> ValuedNumber:
    """D_(GL, theta)(x) = 2^n D^1_(GL, theta)(x)."""
    if not x.is_strongly_theta_regular():
        raise NonRegularError("element is not strongly theta-regular")
    return ValuedNumber(twisted_discriminant(_delta(x), GL)[0], x.p)


def disc_levi_theta(x: ThetaTorusElementGL) -> ValuedNumber:
    """D^1_(L, theta)(x) from Ad(delta) o theta on gl(n) x gl(n)."""
    value = twisted_discriminant(_delta(x), LEVI)[1]
    if not value:
        raise NonRegularError("twisted Levi discriminant vanishes")
    return ValuedNumber(value, x.p)


# ---------------------------------------------------------------------------
# transfer factor


def _half_abs_exponent(x: ValuedNumber) -> Fraction:
    """e with |x|^(1/2) = p^e."""
    if not x.value:
        raise NonRegularError("absolute value of 0")
    return Fraction(-x.valuation(), 2)


def delta_IV(pair: NormPair) -> Monomial:
    """|D^1_(GL, theta)(t)|^(1/2) / |D_SO(t')|^(1/2)."""
    if not pair.is_regular():
        raise NonRegularError("transfer factor needs a regular pair")
    if pair.so_side.p == 2:
        raise ValueError("p = 2 is excluded: |2^n|_p is not 1")
    e = _half_abs_exponent(disc_gl_theta(pair.gl_side)) - _half_abs_exponent(disc_SO(pair.so_side))
    return Monomial.p_power(e)


def transfer_factor(pair: NormPair) -> Monomial:
    return delta_IV(pair)


# ---------------------------------------------------------------------------
# characters


class PPowerSum:
    """Formal Z-linear combination of p^e with rational e."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Fraction, int] | Counter | None = None):
        self._terms = Counter({as_fraction(e): c for e, c in (terms or {}).items() if c})

    @classmethod
    def single(cls, exponent: Number, coeff: int = 1) -> PPowerSum:
        return cls({as_fraction(exponent): coeff})

    @property
    def terms(self) -> dict[Fraction, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def __add__(self, other: PPowerSum) -> PPowerSum:
        out = Counter(self._terms)
        for e, c in other._terms.items():
            out[e] += c
        return PPowerSum(out)

    def shift(self, exponent: Number) -> PPowerSum:
        """Multiply by p^exponent."""
        e0 = as_fraction(exponent)
        return PPowerSum({e + e0: c for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, PPowerSum) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def value(self, p: float) -> float:
        return sum(c * p ** float(e) for e, c in self._terms.items())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            body = "1" if e == 0 else f"p^({e})"
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def sign_vectors(n: int, parity: int | None = None) -> list[tuple[int, ...]]:
    """Vectors in {+1, -1}^n; ``parity`` fixes the number of -1 mod 2."""
    out = []
    for eps in product((1, -1), repeat=n):
        if parity is None or eps.count(-1) % 2 == parity:
            out.append(eps)
    return out


def _twist(x: Sequence[Fraction], eps: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(v if e > 0 else 1 / v for v, e in zip(x, eps))


def _det_exponent(s: Fraction, coords: Sequence[ValuedNumber], eps: Sequence[int]) -> Fraction:
    """|det(x^eps)|^s = p^(-s sum eps_i v_i)."""
    return -s * sum(e * c.valuation() for e, c in zip(eps, coords))


def embeddings_SO(n: int, twist_by_outer: bool = False) -> list[tuple[int, ...]]:
    """Embeddings of the split torus into GL_n up to conjugacy in M.

    They are indexed by sign vectors with an even number of -1 (the
    realised ones); composing with the outer automorphism gives the odd
    ones.
    """
    return sign_vectors(n, 1 if twist_by_outer else 0)


def char_SO(s: Number, gamma: TorusElementSO, twist_by_outer: bool = False) -> PPowerSum:
    """Character of Ind |det|^s from the Siegel Levi GL_n, at gamma.

    sum over embeddings eps of |det(x^eps)|^s |D_M(x^eps)|^(1/2) / |D_SO(x)|^(1/2).
    """
    s = as_fraction(s)
    if not gamma.split:
        return PPowerSum()
    if not gamma.is_regular():
        raise NonRegularError("character needs a regular element")
    M = LeviDescriptor.gl_n(gamma.n)
    d_so = _half_abs_exponent(disc_SO(gamma))
    total = PPowerSum()
    for eps in embeddings_SO(gamma.n, twist_by_outer):
        twisted = TorusElementSO.from_values(gamma.p, _twist(gamma.values(), eps))
        e = _det_exponent(s, gamma.coords, eps) + _half_abs_exponent(disc_M(twisted, M)) - d_so
        total = total + PPowerSum.single(e)
    return total


def char_GL_twisted(s: Number, t: ThetaTorusElementGL) -> PPowerSum:
    """Twisted character of the GL(2n) representation induced from
    |det|^s (x) |det|^-s, at the theta-torus element t.

    All 2^n sign vectors contribute; discriminants come from Ad(delta) o theta.
    """
    s = as_fraction(s)
    if not t.is_strongly_theta_regular():
        raise NonRegularError("twisted character needs a strongly theta-regular element")
    d_gl = _half_abs_exponent(disc_gl_theta(t))
    total = PPowerSum()
    for eps in sign_vectors(t.n):
        twisted = ThetaTorusElementGL(tuple(ValuedNumber(v, t.p) for v in _twist(t.values(), eps)))
        e = _det_exponent(s, t.coords, eps) + _half_abs_exponent(disc_levi_theta(twisted)) - d_gl
        total = total + PPowerSum.single(e)
    return total


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    gl_side: PPowerSum
    so_side: PPowerSum
    transfer_factor: Monomial
    note: str = DISTRIBUTION_FACTOR_NOTE


def verify_character_identity(s: Number, pair: NormPair) -> IdentityCheck:
    """Theta_GL,theta(t) = Delta_IV^-1 (Theta_pi(t') + Theta_pi'(t'))."""
    if pair.so_side.p == 2:
        raise ValueError("p = 2 is excluded from the identity check")
    lhs = char_GL_twisted(s, pair.gl_side)
    delta = delta_IV(pair)
    rhs = (char_SO(s, pair.so_side) + char_SO(s, pair.so_side, twist_by_outer=True)).shift(-delta.p_exp)
    return IdentityCheck(lhs == rhs, lhs, rhs, delta)


# ---------------------------------------------------------------------------
# sampling


def sample_regular_element(n: int, p: int, rng: np.random.Generator) -> TorusElementSO:
    """x_i = +-p^(+-3^k) in random order.

    Valuations 3^0, 3^1, ... are superincreasing, so no signed sum of two
    of them vanishes and every x^a - 1 and x_i + 1 has an exact valuation.
    """
    mags = [3**k for k in range(n)]
    order = rng.permutation(n)
    vals = [int(mags[k]) * int(rng.choice((1, -1))) for k in order]
    signs = [int(rng.choice((1, -1))) for _ in range(n)]
    return TorusElementSO(tuple(ValuedNumber.power(p, v, sgn) for v, sgn in zip(vals, signs)))


def sample_pairs(n: int, p: int, count: int, seed: int = 0) -> list[NormPair]:
    rng = np.random.default_rng(seed)
    return [NormPair.of(sample_regular_element(n, p, rng)) for _ in range(count)]


@dataclass(frozen=True)
class BatchResult:
    holds: int
    total: int
    failures: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.holds}/{self.total} identities hold exactly"


def check_identities(n: int, p: int, s: Number, trials: int, seed: int = 0) -> BatchResult:
    ok, bad = 0, []
    for k, pair in enumerate(sample_pairs(n, p, trials, seed)):
        if verify_character_identity(s, pair).holds:
            ok += 1
        else:
            bad.append(k)
    return BatchResult(ok, trials, tuple(bad))


# ---------------------------------------------------------------------------
# unramified traces


@dataclass(frozen=True)
class TraceCheck:
    holds: bool
    gl_value: PTExpr
    so_value: PTExpr
    so_twisted_value: PTExpr


def verify_unramified_trace(phi_hat: LaurentPoly, psi: ArthurParameter, p: int | None = None) -> TraceCheck:
    """phi_hat(t_Pi) = f_hat(t_pi) = f_hat(t_pi') with f_hat the restriction of phi_hat."""
    t = hecke_matrix_of(psi, p)
    n = t.n
    if phi_hat.nvars != 2 * n:
        raise ArityError(f"phi_hat needs {2 * n} variables")
    if not is_symmetric(phi_hat):
        raise ValueError("phi_hat must be symmetric in its 2n variables")
    f_hat = restrict_theta(phi_hat, n)
    big = laurent_eval(phi_hat, t.multiset())
    a = laurent_eval(f_hat, t.entries)
    b = laurent_eval(f_hat, t.outer_twist().entries)
    return TraceCheck(big == a == b, big, a, b)
