import random
from fractions import Fraction

import pytest

from detlab.algebra import MultiPoly
from detlab.ct import (CTExpression, constant_term, phi_exponents, symmetrize_check, t_presym_integrand,
                       verify_bcn, verify_ct_main, verify_det_via_ct, verify_morris, verify_phi_factorization)
from detlab.errors import BudgetExceededError
from detlab.report import BUDGET_EXCEEDED

t = MultiPoly.var("t")


def test_constant_term_examples():
    assert constant_term((1 + t) * (1 + t ** -1)) == 2
    e = CTExpression(("t",), ((1 + t, 1), (1 + t ** -1, 1)))
    assert constant_term(e) == 2
    exps, _ = phi_exponents(1)
    assert {s: e for s, e in exps.items() if e} == {0: 1}


def test_budget():
    e = CTExpression(("t",), ((1 + t, 400), (1 + t ** -1, 400)))
    with pytest.raises(BudgetExceededError):
        constant_term(e, budget=10)
    assert verify_ct_main(3, 3, 3, budget=10).status == BUDGET_EXCEEDED


def test_linearity_and_shift():
    rng = random.Random(5)
    for _ in range(20):
        f = MultiPoly(("t",), {(rng.randint(-4, 4),): rng.randint(-5, 5) for _ in range(5)})
        g = MultiPoly(("t",), {(rng.randint(-4, 4),): rng.randint(-5, 5) for _ in range(5)})
        a, b = Fraction(rng.randint(-3, 3), 2), rng.randint(-3, 3)
        assert constant_term(a * f + b * g) == a * constant_term(f) + b * constant_term(g)
        k = rng.randint(-3, 3)
        assert constant_term(t ** k * f) == f.coefficient((-k,))


def test_symmetrize():
    assert symmetrize_check(t_presym_integrand(2, 1, 1), trials=4).passed
    t0, t1 = MultiPoly.var("t0", ("t0", "t1")), MultiPoly.var("t1", ("t0", "t1"))
    assert symmetrize_check(CTExpression(("t0", "t1"), ((t0, 1),)), trials=3).passed


def test_ct_main_examples():
    for n, m, x in [(1, 1, 1), (1, 2, 2), (2, 1, 0)]:
        assert verify_ct_main(n, m, x).passed


def test_det_via_ct():
    assert verify_det_via_ct(2, 1, 1, "T").passed
    assert verify_det_via_ct(2, 1, 1, "B").passed
    for x in range(4):
        r, s = verify_det_via_ct(3, 2, x, "T"), verify_det_via_ct(3, 2, x, "B")
        assert r.passed and s.passed and r.details["det"] == s.details["det"]


def test_morris_and_bcn():
    assert verify_morris(1, 1, 1, 5).passed
    assert verify_morris(1, 1, 2, 1).passed
    r = verify_morris(2, 2, 2, 2)
    assert r.passed and "m = 1" in r.details["note"]
    for alpha, beta, n in [(0, 1, 1), (1, 1, 1), (1, 1, 2)]:
        assert verify_bcn(alpha, beta, n).passed


def test_phi_factorization():
    for n in (1, 2, 3):
        r = verify_phi_factorization(n)
        assert r.passed
        assert sum(r.details["exponents"].values()) == n * n
