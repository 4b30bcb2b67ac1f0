import pytest

from detlab.dodgson import (CLAIMS, check_minor_shift, degree_bound, functional_eq_point, triangle_grid,
                            verify_base_cases, verify_claim, verify_condensation_functional_eq)
from detlab.errors import BadSpecError
from detlab.report import FAIL, PASS


def test_d_minor_shift():
    assert check_minor_shift("D", 3, 2, 0).passed


def test_symmetric_binomial_shift():
    assert check_minor_shift("SymmetricBinomial", 3, 1, 1).passed


def test_u_minor_shift_mismatch_is_reported():
    # the corner minors keep the top index 2b of the binomials, so SE is not U(a+1, b+1)
    r = check_minor_shift("U", 3, 0, 2)
    assert r.status == FAIL and r.code == "SHIFT_MISMATCH"
    assert r.witness["minor"] == "SE"


def test_functional_eq_d_family():
    r = verify_condensation_functional_eq("D", triangle_grid(range(3, 9), 8))
    assert r.passed


def test_functional_eq_super_catalan():
    grid = triangle_grid(range(3, 7), 4, order=None)
    assert verify_condensation_functional_eq("SuperCatalan", grid).passed


def test_mutation_caught():
    bad = CLAIMS["D"].mutated()
    r = verify_condensation_functional_eq(bad, triangle_grid(range(3, 5), 3))
    assert r.status == FAIL and r.witness is not None


def test_base_cases():
    assert verify_base_cases("D", [{"a": 1, "b": 0}]).passed
    assert verify_base_cases("T", [{"m": 1}], sizes=(1,)).passed
    assert verify_base_cases("U", [{"a": a, "b": b} for a in range(7) for b in range(a, 7)], sizes=(2,)).passed


def test_verify_claim_parts():
    r = verify_claim("D", triangle_grid(range(3, 5), 4))
    assert r.passed and r.details["parts"] == {"minor_shift": PASS, "functional_eq": PASS, "base_cases": PASS}
    u = verify_claim("U", triangle_grid(range(3, 5), 3, order="a<=b"))
    assert u.details["failing_part"] == "minor_shift"
    assert u.details["parts"]["functional_eq"] == PASS and u.details["parts"]["base_cases"] == PASS


def test_errors():
    with pytest.raises(BadSpecError):
        check_minor_shift("nope", 3, 0, 0)
    with pytest.raises(BadSpecError):
        check_minor_shift("T", 3, 0, 0)
    assert degree_bound(3, 2) == 196


def test_pole_points_skipped():
    # b = a + 1 sits on the boundary of the signed product range
    r = functional_eq_point("D", 3, 0, 1)
    assert r.status in (PASS, "skipped-pole")
