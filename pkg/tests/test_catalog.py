from fractions import Fraction

import pytest

from detlab.algebra import MultiPoly
from detlab.catalog import FORMULAS, MatrixFamilySpec, build_matrix, eval_product, tn_closed_form
from detlab.detcore import Matrix, det
from detlab.errors import BadSpecError, GammaPoleError, PoleError

x = MultiPoly.var("x")


def test_build_examples():
    assert build_matrix("T", 1, m=1) == Matrix([[x]])
    assert build_matrix("D", 2, a=1, b=0) == Matrix([[1, 1], [2, 3]])
    assert build_matrix("SuperCatalan", 1, a=0, b=0) == Matrix([[1]])
    assert build_matrix(MatrixFamilySpec("A", 2, {"m": 1})) == build_matrix("T", 2, m=1, x=1)


def test_bad_specs():
    with pytest.raises(BadSpecError):
        build_matrix("T", 2, m=1, q=3)
    with pytest.raises(BadSpecError):
        build_matrix("D", 2, a=1)
    with pytest.raises(BadSpecError):
        build_matrix("Nope", 2)
    with pytest.raises(BadSpecError):
        eval_product("rhs.cigler", {"n": 2})


def test_product_examples():
    num, den = eval_product("rhs.conjecture1", {"n": 1, "m": 1}, symbolic="x")
    assert num == x * den
    assert eval_product("rhs.macmahon", {"a": 2, "b": 2, "c": 2}) == 20
    assert eval_product("rhs.cigler", {"n": 2, "m": 2}) == 3
    assert eval_product("rhs.cigler", {"n": 5, "m": 1}) == 1


def test_pole_and_limit():
    with pytest.raises(PoleError):
        eval_product("rhs.conjecture1", {"n": 1, "m": 2, "x": 0})
    lim = eval_product("rhs.conjecture1", {"n": 1, "m": 2, "x": 0}, limit="x")
    assert lim == det(build_matrix("T", 1, m=2, x=0))


def test_tn_closed_form():
    assert tn_closed_form(1, 0, 1) == 1
    # Gamma(1)Gamma(3)Gamma(2)Gamma(4) / (Gamma(2)Gamma(2)Gamma(4)Gamma(3)) with Gamma(2n+x-m) = Gamma(3)
    assert tn_closed_form(1, 1, 2) == det(build_matrix("T", 1, m=1, x=2)) == 2
    ratio = Fraction(det(build_matrix("T", 2, m=1, x=2))) / det(build_matrix("T", 1, m=1, x=2))
    assert tn_closed_form(2, 1, 2) == ratio
    with pytest.raises(GammaPoleError):
        tn_closed_form(1, 3, 1)


@pytest.mark.parametrize("fam,params", [("T", {"m": 2}), ("B", {"m": 2}), ("T", {"m": 3})])
def test_build_then_evaluate(fam, params):
    sym = build_matrix(fam, 3, **params)
    for v in range(-10, 11):
        assert sym.map(lambda e: e.evaluate({"x": v})) == build_matrix(fam, 3, x=v, **params)


def test_t_at_m_is_a():
    for n in range(1, 5):
        for m in range(1, 5):
            assert det(build_matrix("T", n, m=m, x=m)) == det(build_matrix("A", n, m=m))


def test_d_reproduces_b():
    for n in range(1, 5):
        for xv in range(0, 7):
            for m in range(0, xv + 1):
                if (xv + m) % 2:
                    continue
                a, b = (xv + m) // 2, (xv - m) // 2
                assert build_matrix("D", n, a=a, b=b) == build_matrix("B", n, m=m, x=xv)


def test_u_is_renamed_t():
    for a in range(0, 7):
        for b in range(a, 7):
            for n in range(1, 7):
                assert build_matrix("U", n, a=a, b=b) == build_matrix("T", n, m=b - a, x=a + b)


def test_conjecture_at_m_is_cigler():
    for n in range(1, 9):
        for m in range(1, 9):
            assert eval_product("rhs.conjecture1", {"n": n, "m": m, "x": m}) == \
                eval_product("rhs.cigler", {"n": n, "m": m})


def test_macmahon_matrix_forms():
    for a in range(4):
        for b in range(4):
            for c in range(1, 5):
                p = eval_product("rhs.macmahon", {"a": a, "b": b, "c": c})
                assert det(build_matrix("MacMahonToeplitz", c, a=a, b=b)) == p
                assert det(build_matrix("SymmetricBinomial", c, a=a, b=b)) == p


def test_registry_ids():
    assert {"rhs.conjecture1", "rhs.d_family", "rhs.cigler", "rhs.ttilde", "rhs.macmahon",
            "rhs.super_catalan", "rhs.morris", "rhs.bcn"} <= set(FORMULAS)
