"""Acceptance criteria; each test prints one pass/fail line in the summary.

Tolerances: every identity is exact (``==`` on ints, Fractions or polynomials).
Time limits are pinned below.
"""

import time

import pytest

from detlab import ct, holonomic
from detlab.algebra import phi_poly
from detlab.checks import (check_cigler, check_concordance, check_conjecture1, check_lgv, check_macmahon,
                           check_supercatalan, check_t_equals_b, check_ttilde, check_toeplitz_binomial,
                           random_even_sequence)
from detlab.combinatorics import count_lgv_paths, count_plane_partitions
from detlab.detcore import verify_toeplitz_splitting
from detlab.dodgson import CLAIMS, triangle_grid, verify_claim, verify_condensation_functional_eq
from detlab.report import FAIL
from detlab.suite import load_config, run_suite, strip_timing

CONJECTURE_SECONDS = 60
CT_INSTANCE_SECONDS = 30
SUITE_SECONDS = 15 * 60
HOLONOMIC_POINTS = [(2, 3), (3, 5), (4, 7)]


def failures(results):
    return [(k, r.witness) for k, r in results if not r.passed]


@pytest.mark.criterion(1, "det T_{n,m}(x) product symbolic in x, n, m <= 6, under 60 s")
def test_criterion_01_conjecture_symbolic():
    t0 = time.perf_counter()
    res = [((n, m), check_conjecture1(n, m)) for n in range(1, 7) for m in range(1, 7)]
    elapsed = time.perf_counter() - t0
    assert failures(res) == []
    assert elapsed < CONJECTURE_SECONDS


@pytest.mark.criterion(2, "det T = det B symbolically in x, n, m <= 6")
def test_criterion_02_t_equals_b():
    res = [((n, m), check_t_equals_b(n, m)) for n in range(1, 7) for m in range(1, 7)]
    assert failures(res) == []


@pytest.mark.criterion(3, "condensation: D claim, mutation control, U claim on the mirrored grid")
def test_criterion_03_condensation():
    d = verify_claim("D", triangle_grid(range(3, 9), 8, order="b<=a"))
    assert d.passed, d.details
    bad = verify_condensation_functional_eq(CLAIMS["D"].mutated(), triangle_grid(range(3, 9), 8))
    assert bad.status == FAIL and bad.witness
    u = verify_claim("U", triangle_grid(range(3, 9), 8, order="a<=b"))
    # the functional equation and base cases hold; the corner-minor shift does not
    assert u.details["parts"]["functional_eq"] == "pass"
    assert u.details["parts"]["base_cases"] == "pass"
    assert u.passed, f"U claim: {u.details.get('failing_part')} fails, witness {u.witness}"


@pytest.mark.criterion(4, "Cigler product for det A_{n,m}, n, m <= 8")
def test_criterion_04_cigler():
    res = [((n, m), check_cigler(n, m)) for n in range(1, 9) for m in range(1, 9)]
    assert failures(res) == []


@pytest.mark.criterion(5, "constant term identity n, m <= 3, 0 <= x <= 3, under 30 s each")
def test_criterion_05_ct_main():
    slow = []
    res = []
    for n in range(1, 4):
        for m in range(1, 4):
            for x in range(0, 4):
                t0 = time.perf_counter()
                res.append(((n, m, x), ct.verify_ct_main(n, m, x)))
                if time.perf_counter() - t0 > CT_INSTANCE_SECONDS:
                    slow.append((n, m, x))
    assert failures(res) == []
    assert slow == []


@pytest.mark.criterion(6, "holonomic pipeline at (2,3), (3,5), (4,7) with N = 15")
def test_criterion_06_holonomic():
    for m, x in HOLONOMIC_POINTS:
        table = holonomic.compute_kernel_table(m, x, 15)
        assert (table(1, 1), table(1, 2), table(2, 2)) == (1, 0, 1)
        rec = holonomic.verify_paper_recurrences(m, x, 15, table=table)
        assert rec.passed and rec.details["first"]["violations"] == rec.details["second"]["violations"] == 0
        assert holonomic.verify_unrolling(m, x, 15, table=table).passed
        assert holonomic.verify_identities(m, x, 15).passed
        assert holonomic.verify_tn_and_det(m, x, 15, det_limit=10).passed
        assert holonomic.verify_guessing(m, x, 15).passed


@pytest.mark.criterion(7, "explicit kernel at x = m, m <= 4, N <= 8")
def test_criterion_07_xm():
    for m in range(1, 5):
        assert holonomic.verify_xm_special(m, 8).passed


@pytest.mark.criterion(8, "Ttilde product symbolic in b, a, c <= 6; Toeplitz splitting identities")
def test_criterion_08_ttilde_and_splitting():
    res = [((a, c), check_ttilde(a, c)) for a in range(0, 7) for c in range(1, 7)]
    assert failures(res) == []
    res = [((s, n), verify_toeplitz_splitting(random_even_sequence(s, 6), n))
           for s in range(100) for n in range(1, 5)]
    assert failures(res) == []
    res = [((a, n), check_toeplitz_binomial(a, n)) for a in range(0, 5) for n in range(1, 5)]
    assert failures(res) == []


@pytest.mark.criterion(9, "MacMahon, brute counts, super Catalan, Morris and BC_n identities")
def test_criterion_09_plane_partitions():
    res = [((a, b, c), check_macmahon(a, b, c, enumerate_limit=3))
           for a in range(9) for b in range(9) for c in range(9)]
    assert failures(res) == []
    res = [((a, b, c), check_lgv(a, b, c)) for a in range(4) for b in range(4) for c in range(4)]
    assert failures(res) == []
    assert count_plane_partitions((2, 2, 2)) == count_lgv_paths((2, 2, 2), "toeplitz") == \
        count_lgv_paths((2, 2, 2), "shifted") == 20
    res = [((n, a, b), check_supercatalan(n, a, b)) for n in range(1, 6) for a in range(5) for b in range(5)]
    assert failures(res) == []
    res = [((a, b, c, 1), ct.verify_morris(a, b, c, 1)) for a in range(5) for b in range(5) for c in range(1, 5)]
    res += [((a, b, c, 2), ct.verify_morris(a, b, c, 2)) for a in range(4) for b in range(4) for c in range(1, 4)]
    assert failures(res) == []
    res = [((al, be, n), ct.verify_bcn(al, be, n)) for al in range(4) for be in range(4) for n in range(1, 4)]
    assert failures(res) == []


@pytest.mark.criterion(10, "phi_n integral for n <= 8; exponent factorization for n <= 6")
def test_criterion_10_phi():
    assert all(phi_poly(n).coefficients_integral() for n in range(1, 9))
    res = [(n, ct.verify_phi_factorization(n)) for n in range(1, 7)]
    assert failures(res) == []


@pytest.mark.criterion(11, "three determinant algorithms agree on 200 random rational matrices")
def test_criterion_11_concordance():
    res = [(s, check_concordance(s)) for s in range(200)]
    assert failures(res) == []
    assert {r.details["n"] for _, r in res} == set(range(1, 7))


@pytest.mark.criterion(12, "paper-full suite: --jobs 1 equals --jobs 8 except timing, under 15 min")
def test_criterion_12_suite_determinism():
    t0 = time.perf_counter()
    one, _ = run_suite(load_config("paper-full"), jobs=1)
    elapsed = time.perf_counter() - t0
    eight, _ = run_suite(load_config("paper-full"), jobs=8)
    assert strip_timing(one) == strip_timing(eight)
    assert elapsed < SUITE_SECONDS
    assert sum(one["counts"].values()) == len(one["records"])
