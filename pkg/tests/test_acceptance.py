"""The eleven acceptance criteria, each timed against its budget.

Every test prints one PASS/FAIL line.  Run directly with
``python tests/test_acceptance.py`` for just the summary.
"""

import math
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import conjugate_exhaustive, dominant_rep, freudenthal_character  # noqa: E402
from so2n.algebra import Monomial, PTExpr, default_variables, elementary_symmetric, power_sum  # noqa: E402
from so2n.eisenstein import UnramifiedCharacter, Verdict, kato_report, multiplicity_one_report  # noqa: E402
from so2n.endoscopy import check_identities, disc_levi_theta, disc_M, sample_pairs, verify_unramified_trace  # noqa: E402
from so2n.hecke import (  # noqa: E402
    REFINED,
    HeckeMatrix,
    bound_exponent_so2n,
    bound_so8,
    conjugate_under_weyl,
    eigenvalue,
    satake_minimal,
    trivial_hecke_matrix,
    weyl_character,
)
from so2n.lfunctions import build_intertwining_product, certifies_nonvanishing, normalized_order_at_s0, residue_point  # noqa: E402
from so2n.params import (  # noqa: E402
    CentralizerType,
    classify,
    global_type_count,
    hecke_matrix_of,
    packet,
    parse_parameter,
    residual_parameter,
    validate,
)
from so2n.roots import LeviDescriptor, enumerate_weyl, longest_relative_element  # noqa: E402
from so2n.singular import degeneracy_theorem_check  # noqa: E402

_report = None


@pytest.fixture(autouse=True)
def _capture(capsys):
    global _report
    _report = capsys
    yield


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        line = f"[{'PASS' if ok and within else 'FAIL'}] {number:>2}. {title}  ({elapsed:.2f}s, budget {budget}s)"
        if _report is not None:
            with _report.disabled():
                print("\n" + line)
        else:
            print(line)
    assert within, f"{title} took {elapsed:.2f}s, budget {budget}s"


def test_1_pole_bookkeeping():
    with criterion(1, "pole order -m at s0, normalized order 0, nonvanishing certified", 1):
        for n in (4, 6, 8):
            M = LeviDescriptor.product_gl2(n)
            prod = build_intertwining_product(longest_relative_element(M), M, n)
            assert prod.order_at(residue_point(n)) == -(n // 2)
            assert normalized_order_at_s0(prod, n) == 0
            assert certifies_nonvanishing(prod, n)
            assert multiplicity_one_report(n).multiplicity_one


def test_2_kato_criterion():
    with criterion(2, "Kato: residual character regular and spherical-cyclic, trivial not regular", 1):
        r = kato_report(UnramifiedCharacter.residual(4))
        assert r.regular and r.spherical_cyclic is Verdict.TRUE
        assert not kato_report(UnramifiedCharacter.trivial(4)).regular


def satake_value_by_hand(n, p):
    return p ** (n - 1) * sum(Fraction(p) ** i + Fraction(1, p**i) for i in range(n))


def test_3_satake_closed_form():
    with criterion(3, "Satake transform of the minimal weight at the trivial matrix", 5):
        for n in (4, 6):
            f = satake_minimal((1,) + (0,) * (n - 1), n)
            for p in (2, 3, 5):
                assert eigenvalue(f, trivial_hecke_matrix(n, p)).value_at(p) == satake_value_by_hand(n, p)
        assert satake_value_by_hand(4, 2) == 135


def dominant_weights(n, total):
    out = set()
    for v in product(range(-total, total + 1), repeat=n):
        if sum(abs(x) for x in v) <= total and dominant_rep(v) == v:
            out.add(v)
    return sorted(out)


def test_4_weyl_character_oracle():
    with criterion(4, "Weyl character equals Freudenthal multiplicities, |lambda| <= 2, n <= 4", 30):
        count = 0
        for n in (2, 3, 4):
            for lam in dominant_weights(n, 2):
                assert weyl_character(lam, n) == freudenthal_character(lam)
                count += 1
        assert count > 0


def test_5_degeneracy():
    with criterion(5, "1000 forms vanishing on n_B degenerate; Pfaffian identically zero", 10):
        for n in (4, 6, 8):
            r = degeneracy_theorem_check(n, 1000, seed=0)
            assert r.all_degenerate and r.trials == 1000
            if n <= 6:
                assert r.pfaffian_identically_zero is True


def test_6_character_identity():
    with criterion(6, "twisted character identity on 100 regular pairs, three (n, p, s)", 60):
        for n, p, s in ((2, 3, Fraction(1, 4)), (2, 5, Fraction(0)), (4, 3, Fraction(1, 3))):
            r = check_identities(n, p, s, 100, seed=0)
            assert (r.holds, r.total) == (100, 100), str(r)


def test_7_discriminant_relation():
    with criterion(7, "D1_(L,theta) = D_M on 500 samples, n in {2, 4}", 10):
        for n in (2, 4):
            M = LeviDescriptor.gl_n(n)
            pairs = sample_pairs(n, 3, 500, seed=n)
            assert len(pairs) == 500
            for pair in pairs:
                assert disc_levi_theta(pair.gl_side).value == disc_M(pair.so_side, M).value


def elementary_by_hand(k, values):
    total = PTExpr()
    for combo in combinations(values, k):
        term = PTExpr.constant(1)
        for m in combo:
            term = term * m.to_expr()
        total = total + term
    return total


def test_8_unramified_trace():
    with criterion(8, "phi(t_Pi) = f(t_pi) = f(t_pi') for p1, p2, e2, e3 at symbolic p, t", 5):
        names = default_variables(8)
        psi = residual_parameter(4)
        full = [Monomial(p2=k, t=e) for e in (1, -1) for k in (3, 1, -1, -3)]
        expected = {
            "p1": elementary_by_hand(1, full),
            "p2": elementary_by_hand(1, [m * m for m in full]),
            "e2": elementary_by_hand(2, full),
            "e3": elementary_by_hand(3, full),
        }
        polys = {
            "p1": power_sum(1, names),
            "p2": power_sum(2, names),
            "e2": elementary_symmetric(2, names),
            "e3": elementary_symmetric(3, names),
        }
        for key, phi in polys.items():
            check = verify_unramified_trace(phi, psi)
            assert check.holds, key
            assert check.gl_value == expected[key], key


def test_9_bounds():
    with criterion(9, "residual exponent exceeds refined bound; bound_so8(2, 2^(7/64))", 1):
        for n in (4, 6, 8, 10):
            residual = hecke_matrix_of(residual_parameter(n)).max_magnitude_exponent(0)
            assert residual == Fraction(n - 1, 2)
            assert residual > bound_exponent_so2n(n, REFINED) == Fraction(n, 2) - 1 + Fraction(1, n * n + 1)
        # 8 (2^(3/2) + 2^(1/2) + 2^(-1/2) + 2^(-3/2)) = 30 sqrt 2, tau + 1/tau = 2 cosh
        by_hand = 30 * math.sqrt(2) * 2 * math.cosh(7 / 64 * math.log(2))
        assert abs(bound_so8(2, 2 ** (7 / 64)) - by_hand) < 1e-9


def test_10_classification_and_packets():
    with criterion(10, "classification Residual cases, packet shapes, global type count", 1):
        big = parse_parameter("eps*sp11 + eps*sp3 + unit(t) + unit(t^-1)")
        assert validate(big, 8).valid and classify(big, 8).residual
        small = parse_parameter("sp5 + triv + unit(t) + unit(t^-1)")
        assert validate(small, 4).valid and classify(small, 4).residual
        torus = packet(residual_parameter(4), 4)
        assert (torus.centralizer_type, torus.component_group_order) == (CentralizerType.TORUS1, 1)
        sl2 = packet(parse_parameter("eps*sp4 + eps*sp4"), 4)
        assert (sl2.centralizer_type, sl2.component_group_order) == (CentralizerType.SL2, 1)
        assert global_type_count(residual_parameter(4), 4).count == 2


def substitute_t(h, t_half_exponent):
    """Replace t by p^(k/2)."""
    return HeckeMatrix(tuple(Monomial(p2=m.p2 + m.t * t_half_exponent, sign=m.sign) for m in h.entries))


def test_11_weyl_conjugacy():
    with criterion(11, "t_pi vs t_pi' not D-conjugate, extended-conjugate; matches exhaustive search", 5):
        assert sum(1 for _ in enumerate_weyl(4)) == 192
        t_pi = hecke_matrix_of(residual_parameter(4))
        t_twist = t_pi.outer_twist()
        # symbolic t, and t = 1 as a point with |t| < p^(1/2)
        for a, b in ((t_pi, t_twist), (substitute_t(t_pi, 0), substitute_t(t_twist, 0))):
            assert not conjugate_under_weyl(a, b, "D")
            assert conjugate_under_weyl(a, b, "Extended")
            assert not conjugate_exhaustive(a.entries, b.entries)
            assert conjugate_exhaustive(a.entries, b.entries, extended=True)
        # at |t| = p^(1/2) an entry becomes self-inverse and the classes merge
        a, b = substitute_t(t_pi, 1), substitute_t(t_twist, 1)
        assert conjugate_under_weyl(a, b, "D") == conjugate_exhaustive(a.entries, b.entries) is True


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[1]) if kv[0].startswith("test_") else 0):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
