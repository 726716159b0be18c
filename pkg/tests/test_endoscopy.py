from fractions import Fraction

import numpy as np
import pytest

from oracles import disc_gl_levi_direct, disc_so_direct, lowest_coefficient_of_shifted_charpoly, twisted_operator
from so2n.algebra import LaurentPoly, ValuedNumber, default_variables, elementary_symmetric, power_sum
from so2n.errors import NonRegularError
from so2n.endoscopy import (
    GL,
    LEVI,
    NormPair,
    PPowerSum,
    TorusElementSO,
    char_GL_twisted,
    char_SO,
    check_identities,
    delta_IV,
    disc_gl_theta,
    disc_gl_theta_full,
    disc_levi_theta,
    disc_levi_theta_closed_form,
    disc_M,
    disc_M_complement,
    disc_SO,
    disc_twisted,
    norm,
    norm_inverse,
    sample_pairs,
    sample_regular_element,
    twisted_discriminant,
    verify_character_identity,
    verify_unramified_trace,
)
from so2n.params import residual_parameter
from so2n.roots import LeviDescriptor, enumerate_weyl


def element(p, *values):
    return TorusElementSO.from_values(p, values)


def test_norm_examples():
    t = element(3, 3, 27)
    assert norm(t).full() == (3, 27, 1, 1)
    assert norm_inverse(norm(t)) == t
    ones = element(3, 1, 1)
    assert norm(ones).full() == (1, 1, 1, 1) and not ones.is_regular()


def test_disc_SO_n2_frozen():
    p = 3
    t = element(p, p, p**3)
    expected = Fraction(1)
    for u in (Fraction(1, p**2), Fraction(p**2), Fraction(p**4), Fraction(1, p**4)):
        expected *= u - 1
    assert disc_SO(t).value == expected == disc_so_direct(t.values())
    with pytest.raises(NonRegularError):
        disc_SO(element(3, 3, 3))


def test_disc_SO_is_weyl_invariant():
    rng = np.random.default_rng(5)
    t = sample_regular_element(3, 5, rng)
    for w in enumerate_weyl(3):
        moved = TorusElementSO(w.act_on_torus(t.coords))
        assert disc_SO(moved) == disc_SO(t)


def test_disc_M_conventions():
    t = element(3, 3, 27)
    gl = LeviDescriptor.gl_n(2)
    assert disc_M(t, gl).value == disc_gl_levi_direct(t.values())
    assert disc_M_complement(t, gl).value == (Fraction(81) - 1) * (Fraction(1, 81) - 1)
    assert (disc_M(t, gl) * disc_M_complement(t, gl)).value == disc_SO(t).value
    full = LeviDescriptor.so_plus_torus(2, 2)
    assert disc_M_complement(t, full).value == 1


def test_disc_twisted_n2_frozen_and_degenerate():
    p = 3
    x = norm(element(p, p, p**3))
    v = [Fraction(p), Fraction(p**3)]
    expected = (v[0] * v[1] - 1) * (1 / (v[0] * v[1]) - 1)
    for a in v:
        expected *= (a + 1) * (1 / a + 1)
    assert disc_twisted(x).value == expected
    with pytest.raises(NonRegularError):
        disc_twisted(norm(element(3, -1, 9)))


@pytest.mark.parametrize("n", [2, 3])
def test_cycle_discriminants_match_explicit_operator(n):
    rng = np.random.default_rng(n)
    for _ in range(2):
        delta = norm(sample_regular_element(n, 3, rng)).full()
        assert lowest_coefficient_of_shifted_charpoly(twisted_operator(delta, levi_only=True)) == twisted_discriminant(delta, LEVI)[0]
        if n == 2:
            assert lowest_coefficient_of_shifted_charpoly(twisted_operator(delta)) == twisted_discriminant(delta, GL)[0]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twisted_discriminant_factorisations(n):
    rng = np.random.default_rng(10 + n)
    for _ in range(20):
        x = norm(sample_regular_element(n, 3, rng))
        assert disc_gl_theta(x).value == (disc_levi_theta_closed_form(x) * disc_twisted(x)).value
        assert disc_gl_theta_full(x).value == 2**n * disc_gl_theta(x).value
        assert disc_levi_theta(x).value == disc_levi_theta_closed_form(x).value


def test_delta_IV_is_the_inverted_plus_one_factors():
    pair = NormPair.of(element(3, 3, Fraction(1, 27)))
    x = pair.so_side.values()
    product = Fraction(1)
    for a in x:
        product *= (a + 1) * (1 / a + 1)
    assert delta_IV(pair).p2 == -ValuedNumber(product, 3).valuation()
    with pytest.raises(NonRegularError):
        delta_IV(NormPair.of(element(3, 1, 1)))


def test_p2_is_excluded():
    with pytest.raises(ValueError):
        verify_character_identity(0, NormPair.of(element(2, 2, 8)))


def test_character_term_counts():
    pair = sample_pairs(2, 3, 1, seed=1)[0]
    so = char_SO(Fraction(1, 4), pair.so_side)
    so_prime = char_SO(Fraction(1, 4), pair.so_side, twist_by_outer=True)
    gl = char_GL_twisted(Fraction(1, 4), pair.gl_side)
    assert len(so) == len(so_prime) == 2 and len(gl) == 4


def test_non_split_element_has_zero_character():
    t = TorusElementSO(element(3, 3, 27).coords, split=False)
    assert char_SO(0, t) == PPowerSum()


def test_outer_twist_is_transport_of_structure():
    for pair in sample_pairs(3, 5, 20, seed=2):
        t = pair.so_side
        assert char_SO(Fraction(1, 3), t, twist_by_outer=True) == char_SO(Fraction(1, 3), t.outer())


@pytest.mark.parametrize("n, p, s", [(2, 3, Fraction(1, 4)), (2, 5, Fraction(0)), (3, 7, Fraction(1, 3)), (4, 5, Fraction(0))])
def test_character_identity(n, p, s):
    result = check_identities(n, p, s, 30, seed=11)
    assert result.holds == result.total


def test_identity_fails_with_the_complementary_levi_discriminant(monkeypatch):
    import so2n.endoscopy as E

    monkeypatch.setattr(E, "disc_M", E.disc_M_complement)
    pair = sample_pairs(2, 3, 1, seed=0)[0]
    assert not E.verify_character_identity(Fraction(1, 4), pair).holds


def test_levi_relation_on_samples():
    for n in (2, 4):
        gl = LeviDescriptor.gl_n(n)
        for pair in sample_pairs(n, 3, 100, seed=n):
            assert disc_levi_theta(pair.gl_side).value == disc_M(pair.so_side, gl).value


@pytest.mark.parametrize(
    "phi",
    [power_sum(1, default_variables(8)), elementary_symmetric(2, default_variables(8)), LaurentPoly.constant(1, default_variables(8))],
    ids=["p1", "e2", "one"],
)
def test_unramified_trace(phi):
    check = verify_unramified_trace(phi, residual_parameter(4), p=2)
    assert check.holds


def test_unramified_trace_constant_and_asymmetric():
    one = LaurentPoly.constant(1, default_variables(8))
    assert verify_unramified_trace(one, residual_parameter(4)).gl_value == 1
    with pytest.raises(ValueError):
        verify_unramified_trace(LaurentPoly.variable("x1", default_variables(8)), residual_parameter(4))
