from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from so2n.algebra import AffineForm
from so2n.lfunctions import (
    DENOMINATOR,
    NUMERATOR,
    UNDETERMINED,
    LFactorKind,
    LQuotientProduct,
    LTerm,
    build_intertwining_product,
    certifies_nonvanishing,
    factor_order,
    normalized_order_at_s0,
    residue_point,
)
from so2n.roots import LeviDescriptor, longest_relative_element, relative_weyl_set


def test_axiom_table():
    assert factor_order(LFactorKind.PARTIAL_ZETA, 1) == -1
    assert factor_order(LFactorKind.RANKIN_SELF_DUAL, 2) == 0
    assert factor_order(LFactorKind.RANKIN_SELF_DUAL, Fraction(1, 2)) is UNDETERMINED
    # regular only strictly right of 1
    assert factor_order(LFactorKind.RANKIN_SAME, 1) is UNDETERMINED
    assert factor_order(LFactorKind.RANKIN_SAME, Fraction(3, 2)) == 0
    assert factor_order(LFactorKind.LOCAL_ZETA, 0) == -1
    assert factor_order(LFactorKind.LOCAL_ZETA, -3) == 0
    assert factor_order(LFactorKind.GAMMA_QUOTIENT, Fraction(1, 10)) == 0
    assert factor_order(LFactorKind.GAMMA_QUOTIENT, 0) is UNDETERMINED


def test_undetermined_has_no_truth_value():
    with pytest.raises(TypeError):
        bool(UNDETERMINED)


def test_residue_point():
    assert residue_point(4) == (Fraction(3, 2), Fraction(1, 2))
    assert residue_point(8)[-1] == Fraction(1, 2)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_longest_element_has_m_fold_pole(n):
    M = LeviDescriptor.product_gl2(n)
    prod = build_intertwining_product(longest_relative_element(M), M, n)
    s0 = residue_point(n)
    assert prod.quotient_count() == (n // 2) ** 2
    assert prod.order_at(s0) == -(n // 2)
    assert len(prod.pole_terms(s0)) == n // 2
    assert normalized_order_at_s0(prod, n) == 0
    assert certifies_nonvanishing(prod, n)


@pytest.mark.parametrize("n", [4, 6])
def test_only_the_longest_element_reaches_order_minus_m(n):
    M = LeviDescriptor.product_gl2(n)
    s0 = residue_point(n)
    reaching = [w for w in relative_weyl_set(M) if build_intertwining_product(w, M, n).order_at(s0) == -(n // 2)]
    assert reaching == [longest_relative_element(M)]


def test_frozen_quotient_for_n4():
    M = LeviDescriptor.product_gl2(4)
    text = str(build_intertwining_product(longest_relative_element(M), M, 4))
    assert text == (
        "L(pi x pi^v)(s1 - s2)/L(pi x pi^v)(s1 - s2 + 1) * L(pi (x) pi)(s1 + s2)/L(pi (x) pi)(s1 + s2 + 1)"
        " * zeta^S(2*s1)/zeta^S(2*s1 + 1) * zeta^S(2*s2)/zeta^S(2*s2 + 1)"
    )


def test_undetermined_propagates():
    s = AffineForm.var("s1")
    prod = LQuotientProduct((LTerm(LFactorKind.RANKIN_SAME, s, NUMERATOR), LTerm(LFactorKind.RANKIN_SAME, s + 1, DENOMINATOR)))
    assert prod.order_at([1]) is UNDETERMINED
    assert prod.order_at([2]) == 0


@given(st.fractions(min_value=Fraction(11, 10), max_value=10))
def test_zeta_quotient_regular_right_of_one(x):
    s = AffineForm.var("s1")
    prod = LQuotientProduct((LTerm(LFactorKind.PARTIAL_ZETA, s, NUMERATOR), LTerm(LFactorKind.PARTIAL_ZETA, s + 1, DENOMINATOR)))
    assert prod.order_at([x]) == 0
