"""Formal pole bookkeeping for products of partial L-function quotients.

The analytic inputs are a small axiom table; nothing is evaluated
numerically.  Orders are orders of vanishing, so a simple pole is -1.
Outside the region an axiom covers, the answer is ``UNDETERMINED``.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import AffineForm, Number, as_fraction
from .errors import ShapeError
from .roots import (
    PRODUCT_GL2,
    LeviDescriptor,
    WeylElement,
    block_action,
    is_positive,
    restricted_positive_roots,
)


class _Undetermined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDETERMINED"

    def __bool__(self) -> bool:
        raise TypeError("UNDETERMINED has no truth value")


UNDETERMINED = _Undetermined()
Order = Union[int, _Undetermined]


class LFactorKind(enum.Enum):
    RANKIN_SELF_DUAL = "L(pi x pi^v)"
    RANKIN_SAME = "L(pi (x) pi)"
    PARTIAL_ZETA = "zeta^S"
    LOCAL_ZETA = "(1-q^-z)^-1"
    GAMMA_QUOTIENT = "Gamma quotient"


@dataclass(frozen=True)
class Axiom:
    statement: str


# Classical inputs, taken as given.  RankinSame is only trusted strictly to
# the right of 1: for self-dual pi it coincides with L(pi x pi^v), which has
# a pole at 1, so declaring it regular there would be wrong.
AXIOMS: dict[LFactorKind, Axiom] = {
    LFactorKind.RANKIN_SELF_DUAL: Axiom("simple pole at 1; holomorphic and nonzero on real arguments > 1"),
    LFactorKind.PARTIAL_ZETA: Axiom("simple pole at 1; holomorphic and nonzero on real arguments > 1"),
    LFactorKind.RANKIN_SAME: Axiom("holomorphic and nonzero on real arguments > 1"),
    LFactorKind.LOCAL_ZETA: Axiom("simple pole at 0; finite and nonzero at every other real argument"),
    LFactorKind.GAMMA_QUOTIENT: Axiom("holomorphic and nonzero for Re > 0"),
}


def factor_order(kind: LFactorKind, value: Number) -> Order:
    """Order of the L-factor of ``kind`` at the real argument ``value``."""
    x = as_fraction(value)
    if kind in (LFactorKind.RANKIN_SELF_DUAL, LFactorKind.PARTIAL_ZETA):
        if x == 1:
            return -1
        return 0 if x > 1 else UNDETERMINED
    if kind is LFactorKind.RANKIN_SAME:
        return 0 if x > 1 else UNDETERMINED
    if kind is LFactorKind.LOCAL_ZETA:
        return -1 if x == 0 else 0
    if kind is LFactorKind.GAMMA_QUOTIENT:
        return 0 if x > 0 else UNDETERMINED
    raise ValueError(f"unknown kind {kind}")


NUMERATOR = 1
DENOMINATOR = -1


@dataclass(frozen=True)
class LTerm:
    kind: LFactorKind
    argument: AffineForm
    position: int = NUMERATOR

    def __str__(self) -> str:
        return f"{self.kind.value}({self.argument})"


Point = Union[Mapping[str, Number], Sequence[Number]]


def _as_mapping(point: Point) -> Mapping[str, Number]:
    if isinstance(point, Mapping):
        return point
    return {f"s{i}": v for i, v in enumerate(point, start=1)}


def pole_order_at(term: LTerm, point: Point) -> Order:
    """Order of the factor itself (position is ignored here)."""
    return factor_order(term.kind, term.argument.evaluate(_as_mapping(point)))


@dataclass(frozen=True)
class LQuotientProduct:
    terms: tuple[LTerm, ...] = ()

    def order_at(self, point: Point) -> Order:
        total = 0
        for term in self.terms:
            k = pole_order_at(term, point)
            if k is UNDETERMINED:
                return UNDETERMINED
            total += term.position * k
        return total

    def pole_terms(self, point: Point) -> list[LTerm]:
        return [t for t in self.terms if t.position == NUMERATOR and pole_order_at(t, point) == -1]

    def quotient_count(self) -> int:
        return sum(1 for t in self.terms if t.position == NUMERATOR)

    def __str__(self) -> str:
        if not self.terms:
            return "1"
        num = [t for t in self.terms if t.position == NUMERATOR]
        den = [t for t in self.terms if t.position == DENOMINATOR]
        return " * ".join(f"{a}/{b}" for a, b in zip(num, den))


def s_variables(m: int) -> list[AffineForm]:
    return [AffineForm.var(f"s{i}") for i in range(1, m + 1)]


def residue_point(n: int) -> tuple[Fraction, ...]:
    """((n-1)/2, (n-3)/2, ..., 1/2)."""
    if n % 2 or n < 2:
        raise ShapeError("the residue point needs n even")
    return tuple(Fraction(n - 1 - 2 * i, 2) for i in range(n // 2))


def _quotient(kind: LFactorKind, arg: AffineForm) -> tuple[LTerm, LTerm]:
    return LTerm(kind, arg, NUMERATOR), LTerm(kind, arg + 1, DENOMINATOR)


def build_intertwining_product(w: WeylElement, M: LeviDescriptor, n: int) -> LQuotientProduct:
    """Unramified intertwining factor for w in W(M), M a product of GL2 blocks.

    Each negated restricted root contributes one quotient L(a)/L(a + 1):
    X_i - X_j with L(pi x pi^v), X_i + X_j with L(pi (x) pi) and 2X_i with
    the partial zeta function at 2s_i.
    """
    if M.shape != PRODUCT_GL2 or M.n != n:
        raise ShapeError("the intertwining product is built for a product of GL2 blocks in D_n")
    m = M.m
    s = s_variables(m)
    wb = block_action(w, M)
    terms: list[LTerm] = []
    for root in restricted_positive_roots(M):
        if is_positive(wb.apply(root)):
            continue
        idx = [k for k, a in enumerate(root) if a]
        if len(idx) == 1:
            terms.extend(_quotient(LFactorKind.PARTIAL_ZETA, s[idx[0]] * 2))
        elif root[idx[1]] < 0:
            terms.extend(_quotient(LFactorKind.RANKIN_SELF_DUAL, s[idx[0]] - s[idx[1]]))
        else:
            terms.extend(_quotient(LFactorKind.RANKIN_SAME, s[idx[0]] + s[idx[1]]))
    return LQuotientProduct(tuple(terms))


def normalized_order_at_s0(prod: LQuotientProduct, n: int) -> Order:
    """Order at s0 of prod times the normaliser prod_i (s_i - s_i0).

    The normaliser vanishes to order one in each of the m variables, so the
    result is m plus the order of the product.  Zero, with every term
    determined, certifies a finite nonzero value.
    """
    s0 = residue_point(n)
    k = prod.order_at(s0)
    if k is UNDETERMINED:
        return UNDETERMINED
    return len(s0) + k


def certifies_nonvanishing(prod: LQuotientProduct, n: int) -> bool:
    """True when the normalised product is provably finite and nonzero at s0."""
    k = normalized_order_at_s0(prod, n)
    return k is not UNDETERMINED and k == 0
