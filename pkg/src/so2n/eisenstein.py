"""Residue point, square-integrability and Kato's irreducibility criterion.

Unramified characters are stored by their values chi_i(p^-1) as exact
monomials.  The formal unit t is transcendental: a factor 1 - c*t^b with
b != 0 never vanishes identically.  A numeric mode substitutes a concrete
positive value for t; there, near-zero factors make the verdicts
``UNDETERMINED`` rather than guessed.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Monomial, Number, PTExpr, as_fraction
from .errors import ShapeError
from .lfunctions import build_intertwining_product, certifies_nonvanishing, normalized_order_at_s0, residue_point
from .roots import (
    DIFFERENCE,
    LeviDescriptor,
    Root,
    RootSystemD,
    WeylElement,
    block_action,
    coroot,
    generated_group,
    longest_relative_element,
    positive_roots,
    signed_permutation_search,
)

NUMERIC_TOLERANCE = 1e-12


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDETERMINED = "undetermined"

    @classmethod
    def of(cls, flag: bool) -> Verdict:
        return cls.TRUE if flag else cls.FALSE


@dataclass(frozen=True)
class ResiduePoint:
    n: int

    @property
    def coordinates(self) -> tuple[Fraction, ...]:
        return residue_point(self.n)


@dataclass(frozen=True)
class UnramifiedCharacter:
    """chi = (chi_1(p^-1), ..., chi_n(p^-1))."""

    entries: tuple[Monomial, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def trivial(cls, n: int) -> UnramifiedCharacter:
        return cls((Monomial(),) * n)

    @classmethod
    def residual(cls, n: int) -> UnramifiedCharacter:
        """(p^((n-1)/2) t, p^((n-1)/2) t^-1, ..., p^(1/2) t, p^(1/2) t^-1)."""
        if n % 2:
            raise ShapeError("the residual character needs n even")
        out = []
        for k in range(n // 2):
            p2 = n - 1 - 2 * k
            out += [Monomial(p2, 1), Monomial(p2, -1)]
        return cls(tuple(out))

    def at_coroot(self, alpha: Root) -> Monomial:
        """chi(a_alpha), where chi_k(p) = entries[k]^-1."""
        value = Monomial()
        for c, slot in zip(self.entries, coroot(alpha, self.n)):
            value = value * c ** (-(slot.p2 // 2))
        return value

    def act(self, w: WeylElement) -> UnramifiedCharacter:
        return UnramifiedCharacter(w.act_on_torus(self.entries))

    def inverse(self) -> UnramifiedCharacter:
        return UnramifiedCharacter(tuple(c.inverse() for c in self.entries))


def kato_c_alpha(chi: UnramifiedCharacter, alpha: Root, q: Monomial | None = None) -> tuple[PTExpr, PTExpr]:
    """(e_alpha, d_alpha) = (1 - chi(a_alpha)/q, 1 - chi(a_alpha))."""
    q = q or Monomial(p2=2)
    value = chi.at_coroot(alpha)
    return 1 - (value / q).to_expr(), 1 - value.to_expr()


def reflection(alpha: Root, n: int) -> WeylElement:
    perm = list(range(n))
    signs = [1] * n
    i, j = alpha.i - 1, alpha.j - 1
    perm[i], perm[j] = j, i
    if alpha.kind != DIFFERENCE:
        signs[i] = signs[j] = -1
    return WeylElement(tuple(perm), tuple(signs))


@dataclass(frozen=True)
class KatoReport:
    e_nonzero: bool
    e_inverse_nonzero: bool
    stabilizer_order: int
    reflection_subgroup_order: int
    regular: bool
    irreducible: Verdict
    spherical_cyclic: Verdict
    vanishing_e: tuple[Root, ...] = ()
    vanishing_e_inverse: tuple[Root, ...] = ()


class _Zero:
    """Decides whether a factor 1 - m vanishes, formally or numerically."""

    def __init__(self, p: int | None, tau: float | None):
        if tau is not None and p is None:
            raise ValueError("numeric mode needs a concrete prime p")
        self.p, self.tau = p, tau
        self.doubtful = False

    def is_one(self, m: Monomial) -> bool:
        if self.tau is None:
            return m.is_one()
        value = m.sign * self.p ** (m.p2 / 2) * self.tau ** m.t
        close = abs(value - 1) < NUMERIC_TOLERANCE
        if close and not m.is_one():
            self.doubtful = True
        return close

    def same(self, a: Monomial, b: Monomial) -> bool:
        return self.is_one(a / b)


def stabilizer(chi: UnramifiedCharacter, test: _Zero | None = None) -> list[WeylElement]:
    """W_chi by a complete signed-permutation search."""
    test = test or _Zero(None, None)
    entries = chi.entries

    def accept(partial):
        i = len(partial) - 1
        k, s = partial[i]
        image = entries[i] if s > 0 else entries[i].inverse()
        return test.same(image, entries[k])

    return list(signed_permutation_search(chi.n, accept))


def kato_report(
    chi: UnramifiedCharacter,
    n: int | None = None,
    q: Monomial | None = None,
    p: int | None = None,
    tau: float | None = None,
) -> KatoReport:
    """Both parts of Kato's theorem for the principal series I_chi.

    With ``tau`` set, t is replaced by the positive real ``tau`` and p by
    the integer ``p``; any factor that is numerically zero without being
    formally zero turns the verdicts into ``UNDETERMINED``.
    """
    n = n or chi.n
    if n != chi.n:
        raise ShapeError(f"character has {chi.n} entries, expected {n}")
    q = q or Monomial(p2=2)
    test = _Zero(p, tau)
    roots = positive_roots(RootSystemD(n))
    inv = chi.inverse()
    vanish = tuple(a for a in roots if test.is_one(chi.at_coroot(a) / q))
    vanish_inv = tuple(a for a in roots if test.is_one(inv.at_coroot(a) / q))
    reflections = [reflection(a, n) for a in roots if test.is_one(chi.at_coroot(a))]
    stab = len(stabilizer(chi, test))
    refl = len(generated_group(reflections, n))
    e_ok, e_inv_ok = not vanish, not vanish_inv
    same = stab == refl
    if test.doubtful:
        irreducible = cyclic = Verdict.UNDETERMINED
    else:
        irreducible = Verdict.of(e_ok and e_inv_ok and same)
        cyclic = Verdict.of(e_ok and same)
    return KatoReport(e_ok, e_inv_ok, stab, refl, stab == 1, irreducible, cyclic, vanish, vanish_inv)


def e_product(chi: UnramifiedCharacter, q: Monomial | None = None) -> PTExpr:
    """e(chi) as one formal expression."""
    total = PTExpr.constant(1)
    for a in positive_roots(RootSystemD(chi.n)):
        total = total * kato_c_alpha(chi, a, q)[0]
    return total


def restricted_simple_coordinates(v: Sequence[Number]) -> tuple[Fraction, ...]:
    """Coefficients of v in X_1 - X_2, ..., X_(m-1) - X_m, 2X_m."""
    out = []
    acc = Fraction(0)
    for a in v[:-1]:
        acc += as_fraction(a)
        out.append(acc)
    out.append((acc + as_fraction(v[-1])) / 2)
    return tuple(out)


def square_integrable(exponent: Sequence[Number], n: int) -> bool:
    """Langlands' criterion: the exponent is a strictly negative combination
    of the restricted simple roots."""
    if len(exponent) != n // 2 or n % 2:
        raise ShapeError(f"expected {n // 2} block exponents for n={n}")
    return all(c < 0 for c in restricted_simple_coordinates(exponent))


def w0_exponent(n: int) -> tuple[Fraction, ...]:
    M = LeviDescriptor.product_gl2(n)
    return block_action(longest_relative_element(M), M).apply(residue_point(n))


@dataclass(frozen=True)
class MultiplicityAnnotation:
    """The three ingredients behind multiplicity one of the residual
    representation, gathered from their own computations."""

    normalized_order: int
    nonvanishing_certified: bool
    square_integrable: bool
    spherical_cyclic: Verdict

    @property
    def multiplicity_one(self) -> bool:
        return self.nonvanishing_certified and self.square_integrable and self.spherical_cyclic is Verdict.TRUE


def multiplicity_one_report(n: int) -> MultiplicityAnnotation:
    M = LeviDescriptor.product_gl2(n)
    prod = build_intertwining_product(longest_relative_element(M), M, n)
    kato = kato_report(UnramifiedCharacter.residual(n))
    return MultiplicityAnnotation(
        normalized_order_at_s0(prod, n),
        certifies_nonvanishing(prod, n),
        square_integrable(w0_exponent(n), n),
        kato.spherical_cyclic,
    )
