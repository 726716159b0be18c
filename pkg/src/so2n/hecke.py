"""Spherical Hecke algebra of SO(2n): Weyl characters, Satake transforms of
minimal weights, Hecke matrices, eigenvalues, conjugacy and bounds."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .algebra import LaurentPoly, Monomial, Number, PTExpr, as_fraction, default_variables, laurent_eval
from .errors import ArityError, LimitExceeded, ShapeError
from .roots import RootSystemD, WeylElement, positive_roots, rho

WEYL_FORMULA_LIMIT = 6
KIM_SARNAK = Fraction(7, 64)

LRS = "LRS"
RAMANUJAN = "Ramanujan"
REFINED = "Refined"


def lrs_epsilon(n: int) -> Fraction:
    return Fraction(1, n * n + 1)


def check_dominant(weight: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(weight)
    n = len(lam)
    if n < 2 or any(not isinstance(a, int) for a in lam):
        raise ValueError(f"{lam} is not an integral weight of D_n")
    for a in positive_roots(RootSystemD(n)):
        if sum(x * y for x, y in zip(lam, a.vector(n))) < 0:
            raise ValueError(f"{lam} is not dominant: pairing with {a} is negative")
    return lam


def simple_reflections(n: int) -> list[WeylElement]:
    gens = []
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        gens.append(WeylElement(tuple(perm), (1,) * n))
    perm = list(range(n))
    perm[n - 2], perm[n - 1] = n - 1, n - 2
    signs = [1] * n
    signs[n - 2] = signs[n - 1] = -1
    gens.append(WeylElement(tuple(perm), tuple(signs)))
    return gens


def is_weyl_invariant(f: LaurentPoly) -> bool:
    return all(f.substitute_monomials(w.monomial_images(), f.variables) == f for w in simple_reflections(f.nvars))


def alternating_sum(mu: Sequence[int], n: int, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Sum over W(D_n) of sign(w) x^(w mu)."""
    variables = tuple(variables) if variables else default_variables(n)
    terms: dict[tuple[int, ...], int] = {}
    for perm in permutations(range(n)):
        w = WeylElement(perm, (1,) * n)
        sgn = w.sign_character()
        for signs in product((1, -1), repeat=n):
            if signs.count(-1) % 2:
                continue
            e = [0] * n
            for i in range(n):
                e[perm[i]] = signs[i] * mu[i]
            key = tuple(e)
            terms[key] = terms.get(key, 0) + sgn
    return LaurentPoly(variables, terms)


def weyl_character(weight: Sequence[int], n: int | None = None, limit: int = WEYL_FORMULA_LIMIT) -> LaurentPoly:
    """Character of the irreducible SO(2n, C)-module of highest weight ``weight``.

    Weyl's formula A_(lambda+rho) / A_rho, with the quotient taken by exact
    Laurent division.
    """
    lam = check_dominant(weight)
    n = n or len(lam)
    if n != len(lam):
        raise ArityError(f"weight {lam} does not have {n} entries")
    if n > limit:
        raise LimitExceeded(f"Weyl formula over W(D_{n}) exceeds the limit n <= {limit}")
    r = rho(RootSystemD(n))
    numerator = alternating_sum([a + b for a, b in zip(lam, r)], n)
    return numerator.exact_div(alternating_sum(r, n))


def orbit_sum(weight: Sequence[int], n: int) -> LaurentPoly:
    """Sum of x^mu over the W(D_n)-orbit of ``weight``."""
    start = tuple(weight)
    seen = {start}
    frontier = [start]
    gens = simple_reflections(n)
    while frontier:
        nxt = []
        for v in frontier:
            for s in gens:
                u = s.apply(v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return LaurentPoly(default_variables(n), {v: 1 for v in seen})


def is_minuscule(weight: Sequence[int]) -> bool:
    lam = tuple(weight)
    return all(a == 0 for a in lam) or (lam[0] == 1 and all(a == 0 for a in lam[1:]))


@dataclass(frozen=True)
class SphericalFunction:
    """Satake transform p^p_exponent * character, a W(D_n)-invariant."""

    p_exponent: Fraction
    character: LaurentPoly
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.check and not is_weyl_invariant(self.character):
            raise ValueError("Satake transform must be invariant under W(D_n)")

    @property
    def n(self) -> int:
        return self.character.nvars

    def __str__(self) -> str:
        scale = Monomial.p_power(self.p_exponent)
        return f"{scale}*({self.character})" if not scale.is_one() else str(self.character)


def satake_minimal(weight: Sequence[int], n: int | None = None, limit: int = WEYL_FORMULA_LIMIT) -> SphericalFunction:
    """Satake transform of the double coset of a minimal weight.

    For minimal weights it is p^<lambda, rho> Tr(V_lambda).  Past the Weyl
    formula limit the character is taken as the orbit sum, which equals
    Tr(V_lambda) because every weight of a minuscule module is extremal.
    """
    lam = check_dominant(weight)
    n = n or len(lam)
    if not is_minuscule(lam):
        raise ValueError(f"{lam} is not a minimal weight; only minimal weights have this closed form")
    shift = sum(a * b for a, b in zip(lam, rho(RootSystemD(n))))
    char = weyl_character(lam, n, limit) if n <= limit else orbit_sum(lam, n)
    return SphericalFunction(Fraction(shift), char)


@dataclass(frozen=True)
class HeckeMatrix:
    """First half (t_1, ..., t_n) of diag(t_1, ..., t_n, t_n^-1, ..., t_1^-1)."""

    entries: tuple[Monomial, ...]
    p: int | None = None

    @property
    def n(self) -> int:
        return len(self.entries)

    def multiset(self) -> tuple[Monomial, ...]:
        return self.entries + tuple(m.inverse() for m in reversed(self.entries))

    def outer_twist(self) -> HeckeMatrix:
        """Conjugate by the outer automorphism: invert the last entry."""
        return HeckeMatrix(self.entries[:-1] + (self.entries[-1].inverse(),), self.p)

    def inverted(self) -> HeckeMatrix:
        return HeckeMatrix(tuple(m.inverse() for m in self.entries), self.p)

    def act(self, w: WeylElement) -> HeckeMatrix:
        return HeckeMatrix(w.act_on_torus(self.entries), self.p)

    def max_magnitude_exponent(self, t_exponent: Number = 0) -> Fraction:
        return max(m.magnitude_exponent(t_exponent) for m in self.multiset())

    def __str__(self) -> str:
        return "diag(" + ", ".join(str(m) for m in self.multiset()) + ")"


def trivial_hecke_matrix(n: int, p: int | None = None) -> HeckeMatrix:
    if n % 2:
        raise ShapeError("the trivial-representation Hecke matrix is stated for n even")
    return HeckeMatrix(tuple(Monomial(p2=2 * (n - 1 - i)) for i in range(n)), p)


def eigenvalue(f: SphericalFunction, t: HeckeMatrix) -> PTExpr:
    if f.n != t.n:
        raise ArityError(f"function in {f.n} variables, matrix of size {t.n}")
    return Monomial.p_power(f.p_exponent).to_expr() * laurent_eval(f.character, t.entries)


def satake_closed_form(n: int) -> PTExpr:
    """p^(n-1) * sum_(i=0)^(n-1) (p^i + p^-i)."""
    total = PTExpr()
    for i in range(n):
        total = total + Monomial(p2=2 * i) + Monomial(p2=-2 * i)
    return Monomial(p2=2 * (n - 1)).to_expr() * total


# ---------------------------------------------------------------------------
# bounds


def bound_so8(p: int, tau: float | None = None, kim_sarnak: Fraction = KIM_SARNAK) -> float:
    """p^3 (p^(3/2) + p^(1/2) + p^(-1/2) + p^(-3/2)) (tau + 1/tau).

    Default tau = p^kim_sarnak.  Exponents stay exact until the final sum.
    """
    if tau is not None and tau <= 0:
        raise ValueError("tau must be positive")
    inner = [Fraction(3) + Fraction(k, 2) for k in (3, 1, -1, -3)]
    if tau is None:
        exps = [e + s * as_fraction(kim_sarnak) for e in inner for s in (1, -1)]
        return math.fsum(p ** float(e) for e in exps)
    return math.fsum(p ** float(e) for e in inner) * (tau + 1 / tau)


def bound_exponent_so2n(n: int, mode: str, epsilon: Fraction | None = None) -> Fraction:
    if n % 2:
        raise ShapeError("bounds are stated for n even")
    eps = lrs_epsilon(n) if epsilon is None else as_fraction(epsilon)
    if mode == LRS:
        return Fraction(n - 1) + Fraction(n - 1, 2) - eps
    if mode == RAMANUJAN:
        return Fraction(n - 1) + Fraction(n - 2, 2)
    if mode == REFINED:
        return Fraction(n, 2) - 1 + eps
    raise ValueError(f"unknown bound mode {mode!r}")


# ---------------------------------------------------------------------------
# conjugacy


def canonical_form(h: HeckeMatrix) -> tuple[tuple[Monomial, ...], int, bool]:
    """(sorted class representatives, flip parity, has a self-inverse entry).

    Each entry is replaced by the larger of {x, x^-1}; the parity counts how
    many entries had to be inverted.
    """
    reps = []
    flips = 0
    free = False
    for m in h.entries:
        if m.is_self_inverse():
            free = True
            reps.append(m)
            continue
        inv = m.inverse()
        if inv.sort_key() > m.sort_key():
            reps.append(inv)
            flips += 1
        else:
            reps.append(m)
    return tuple(sorted(reps, key=Monomial.sort_key)), flips % 2, free


def conjugate_under_weyl(a: HeckeMatrix, b: HeckeMatrix, group: str = "D") -> bool:
    """Whether a signed permutation (even, for group D) carries a to b.

    Within a class {x, x^-1} with x != x^-1, any stabilising signed
    permutation flips an even number of entries, so the flip parity is an
    invariant unless some entry equals its own inverse.
    """
    if a.n != b.n:
        raise ArityError("matrices of different sizes")
    ra, pa, free = canonical_form(a)
    rb, pb, _ = canonical_form(b)
    if ra != rb:
        return False
    if group == "Extended":
        return True
    if group != "D":
        raise ValueError(f"unknown group {group!r}")
    return free or pa == pb


def multiset_counter(h: HeckeMatrix) -> Counter:
    return Counter(h.multiset())
