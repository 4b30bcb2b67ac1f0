import random
from fractions import Fraction

import pytest

from detlab.catalog import tn_closed_form
from detlab.detcore import det
from detlab.errors import InsufficientDataError
from detlab.holonomic import (KernelTable, a_entry, a_matrix, annihilates, compute_kernel_table, guess_recurrence,
                              in_span, kernel_via_minors, known_recurrences, unroll, verify_identities,
                              verify_paper_recurrences, verify_tn_and_det, verify_unrolling, verify_xm_special)
from detlab.report import DEGENERATE, FAIL

FIRST = ((1, 0), (0, 1), (0, 0))
SECOND = ((0, 2), (0, 1), (0, 0))


@pytest.fixture(scope="module")
def table23():
    return compute_kernel_table(2, 3, 15)


def test_kernel_rows(table23):
    assert table23(1, 1) == 1 and table23(1, 2) == 0 and table23(2, 2) == 1
    assert a_entry(2, 3, 1, 1) * table23(2, 1) + a_entry(2, 3, 1, 2) * table23(2, 2) == 0
    for n in range(2, 16):
        for i in range(1, n):
            assert sum(a_entry(2, 3, i, j) * table23(n, j) for j in range(1, n + 1)) == 0


@pytest.mark.parametrize("m,x", [(2, 3), (3, 5), (1, 4)])
def test_minor_route(m, x):
    T = compute_kernel_table(m, x, 6)
    for n in range(2, 7):
        assert kernel_via_minors(m, x, n) == T.rows[n - 1]


def test_guess_contains_known(table23):
    rec1, rec2 = known_recurrences(2, 3)
    b1 = guess_recurrence(table23, FIRST, 4)
    b2 = guess_recurrence(table23, SECOND, 4)
    assert b1 and in_span(b1, rec1)
    assert b2 and in_span(b2, rec2)
    assert all(not annihilates(r, table23) for r in b1 + b2)


def test_guess_on_unrolled_sequence_acts_like_known():
    seq = unroll(3, 5, 15)
    rec1, _ = known_recurrences(3, 5)
    basis = guess_recurrence(seq, FIRST, 4)
    assert in_span(basis, rec1)


def test_guess_noise_and_data_guard(table23):
    rng = random.Random(1)
    noise = KernelTable(2, 3, tuple(tuple(Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(n))
                                    for n in range(1, 16)))
    assert guess_recurrence(noise, FIRST, 4) == []
    with pytest.raises(InsufficientDataError):
        guess_recurrence(compute_kernel_table(2, 3, 6), FIRST, 4)


def test_known_recurrences_zero_violations(table23):
    r = verify_paper_recurrences(2, 3, 15, table=table23)
    assert r.passed and r.details["first"]["violations"] == 0
    assert verify_paper_recurrences(3, 5, 12).passed


def test_corruption_is_localized(table23):
    bad = table23.with_entry(7, 3, table23(7, 3) + 1)
    r = verify_paper_recurrences(2, 3, 15, table=bad)
    assert r.status == FAIL
    assert (r.witness["n"], r.witness["j"]) in {(6, 3), (7, 3), (7, 2), (6, 2), (7, 1)}


def test_unrolling_and_identities():
    assert verify_unrolling(2, 3, 15).passed
    assert verify_identities(2, 3, 10).passed
    assert verify_identities(1, 1, 8).status in ("pass", DEGENERATE)
    r = verify_identities(2, 3, 6)
    assert all(r.details["t"][n] == tn_closed_form(n, 2, 3) != 0 for n in range(1, 7))


def test_tn_and_det():
    r = verify_tn_and_det(1, 2, 2)
    assert r.passed
    assert r.details["t"][2] == Fraction(det(a_matrix(1, 2, 2))) / det(a_matrix(1, 2, 1))
    assert verify_tn_and_det(2, 3, 10).passed


def test_xm_special():
    assert verify_xm_special(2, 8).passed
    T = compute_kernel_table(3, 3, 4)
    assert sum(a_entry(3, 3, 4, j) * T(4, j) for j in range(1, 5)) != 0
    assert verify_xm_special(3, 4).passed
