import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_relative_weyl_set
from so2n.errors import ShapeError
from so2n.roots import (
    LeviDescriptor,
    RootSystemD,
    WeylElement,
    block_action,
    elementary_symmetries,
    enumerate_weyl,
    generated_group,
    longest_relative_element,
    positive_roots,
    relative_weyl_set,
    restricted_simple_roots,
    rho,
    weyl_order,
)


def test_d4_basics():
    R = RootSystemD(4)
    assert len(positive_roots(R)) == 12
    assert rho(R) == (3, 2, 1, 0)
    assert weyl_order(4) == 192 and weyl_order(4, extended=True) == 384
    assert len(list(enumerate_weyl(4))) == 192


@pytest.mark.parametrize("n, size", [(4, 8), (6, 48), (8, 384)])
def test_relative_weyl_set_sizes(n, size):
    assert len(relative_weyl_set(LeviDescriptor.product_gl2(n))) == size


@pytest.mark.parametrize(
    "M",
    [
        LeviDescriptor.product_gl2(4),
        LeviDescriptor.product_gl2(6),
        LeviDescriptor.gl_n(4),
        LeviDescriptor.gl_n(5),
        LeviDescriptor.so_plus_torus(4, 2),
        LeviDescriptor.so_plus_torus(5, 3),
        LeviDescriptor.so_plus_torus(3, 0),
    ],
    ids=str,
)
def test_relative_weyl_set_matches_definition(M):
    fast = {(w.perm, w.signs) for w in relative_weyl_set(M)}
    assert fast == brute_relative_weyl_set(list(M.simple_roots), M.n)


def test_whole_group_and_siegel_levi():
    assert [w.is_identity() for w in relative_weyl_set(LeviDescriptor.so_plus_torus(4, 4))] == [True]
    assert len(relative_weyl_set(LeviDescriptor.gl_n(4))) == 2


def test_restricted_simple_roots_count_is_m():
    for n in (4, 6, 8):
        assert len(restricted_simple_roots(LeviDescriptor.product_gl2(n))) == n // 2


def test_elementary_symmetries_generate_block_action():
    for n in (4, 6):
        M = LeviDescriptor.product_gl2(n)
        images = {block_action(w, M) for w in relative_weyl_set(M)}
        gens = [block_action(g, M) for g in elementary_symmetries(M)]
        assert generated_group(gens, n // 2) == images
        assert block_action(longest_relative_element(M), M).signs == (-1,) * (n // 2)


def test_block_action_rejects_non_normalising():
    M = LeviDescriptor.product_gl2(4)
    w = WeylElement((1, 2, 0, 3), (1, 1, 1, 1))
    with pytest.raises(ShapeError):
        block_action(w, M)


signed = st.integers(3, 5).flatmap(
    lambda n: st.tuples(st.permutations(range(n)), st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
)


@given(signed, signed)
def test_weyl_composition_is_action_composition(a, b):
    if len(a[0]) != len(b[0]):
        return
    u, w = WeylElement(tuple(a[0]), tuple(a[1])), WeylElement(tuple(b[0]), tuple(b[1]))
    v = tuple(range(1, len(a[0]) + 1))
    assert (u * w).apply(v) == u.apply(w.apply(v))
    assert (u * u.inverse()).is_identity()
