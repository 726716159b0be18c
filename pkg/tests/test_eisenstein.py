from fractions import Fraction

import pytest

from so2n.algebra import Monomial
from so2n.eisenstein import (
    UnramifiedCharacter,
    Verdict,
    e_product,
    kato_c_alpha,
    kato_report,
    multiplicity_one_report,
    restricted_simple_coordinates,
    square_integrable,
    stabilizer,
    w0_exponent,
)
from so2n.errors import ShapeError
from so2n.lfunctions import residue_point
from so2n.roots import RootSystemD, positive_roots


def test_residual_character_entries():
    chi = UnramifiedCharacter.residual(4)
    assert [str(m) for m in chi.entries] == ["p^(3/2)*t", "p^(3/2)*t^-1", "p^(1/2)*t", "p^(1/2)*t^-1"]
    with pytest.raises(ShapeError):
        UnramifiedCharacter.residual(3)


def test_c_alpha_vanishing_convention():
    # chi(a_alpha) = q on X1 - X2 kills e_alpha
    chi = UnramifiedCharacter((Monomial(), Monomial(p2=2)))
    alpha = positive_roots(RootSystemD(2))[0]
    e, d = kato_c_alpha(chi, alpha)
    assert e.is_zero()
    assert str(d) == "-p + 1"
    other = UnramifiedCharacter((Monomial(p2=2), Monomial()))
    assert str(kato_c_alpha(other, alpha)[0]) == "1 - p^-2"


def test_kato_residual_n4():
    r = kato_report(UnramifiedCharacter.residual(4))
    assert r.e_nonzero and not r.e_inverse_nonzero
    assert r.stabilizer_order == 1 and r.regular
    assert r.irreducible is Verdict.FALSE
    assert r.spherical_cyclic is Verdict.TRUE
    assert [str(a) for a in r.vanishing_e_inverse] == ["X1-X3", "X2-X4", "X3+X4"]


def test_kato_trivial_character():
    r = kato_report(UnramifiedCharacter.trivial(4))
    assert r.stabilizer_order == r.reflection_subgroup_order == 192
    assert not r.regular
    assert r.irreducible is Verdict.TRUE


def test_numeric_mode_flags_coincidences():
    # t = p^(1/2) makes p^(1/2) t = p, a coincidence the formal check never sees
    r = kato_report(UnramifiedCharacter.residual(4), p=2, tau=2**0.5)
    assert r.spherical_cyclic is Verdict.UNDETERMINED
    generic = kato_report(UnramifiedCharacter.residual(4), p=2, tau=2**0.3)
    assert generic.spherical_cyclic is Verdict.TRUE


def test_e_product_is_not_zero():
    assert not e_product(UnramifiedCharacter.residual(4)).is_zero()
    assert e_product(UnramifiedCharacter.residual(4).inverse()).is_zero()


def test_stabilizer_of_regular_character_is_trivial():
    assert len(stabilizer(UnramifiedCharacter.residual(6))) == 1


def test_square_integrability_at_w0():
    assert w0_exponent(4) == (Fraction(-3, 2), Fraction(-1, 2))
    assert restricted_simple_coordinates(w0_exponent(4)) == (Fraction(-3, 2), Fraction(-1))
    assert square_integrable(w0_exponent(4), 4)
    assert not square_integrable(residue_point(4), 4)
    assert not square_integrable((0, 0), 4)
    for n in (6, 8):
        assert square_integrable(w0_exponent(n), n)


def test_multiplicity_one_annotation():
    for n in (4, 6):
        report = multiplicity_one_report(n)
        assert report.normalized_order == 0
        assert report.multiplicity_one
