import random
from fractions import Fraction

import pytest

from detlab.algebra import MultiPoly
from detlab.catalog import build_matrix
from detlab.detcore import (Matrix, det_condensation_numeric, det_fraction_free, det_permutation, minor,
                            nullspace, verify_toeplitz_splitting)
from detlab.dodgson import desnanot_jacobi_holds
from detlab.errors import MatrixIndexError, NotEvenError, SizeLimitError


def rand_matrix(rng, n, lo=-9, hi=9):
    return Matrix.from_function(n, lambda i, j: Fraction(rng.randint(lo, hi), rng.randint(1, 5)))


def test_det_examples():
    assert det_fraction_free(Matrix.identity(3)) == 1
    assert det_fraction_free(Matrix([[1, 2], [3, 4]])) == -2
    x = MultiPoly.var("x")
    assert det_fraction_free(build_matrix("T", 2, m=1)) == x * (x + 1) * Fraction(1, 2)


def test_permutation_expansion():
    assert det_permutation(Matrix([[7]])) == 7
    assert det_permutation(Matrix([[1, 2, 3], [4, 5, 6], [1, 2, 3]])) == 0
    rng = random.Random(4)
    M = Matrix.from_function(4, lambda i, j: rng.randint(-9, 9))
    assert det_permutation(M) == det_fraction_free(M)
    with pytest.raises(SizeLimitError):
        det_permutation(Matrix.identity(10))


def test_minor():
    assert minor(Matrix.identity(3), 0, 0) == Matrix.identity(2)
    assert minor(Matrix([[1, 2], [3, 4]]), 0, 0) == Matrix([[4]])
    with pytest.raises(MatrixIndexError):
        minor(Matrix.identity(2), 2, 0)


def test_condensation():
    assert not det_condensation_numeric(Matrix.identity(2)).fallback
    # interior off-diagonal zeros of the identity are divisors one level up
    r = det_condensation_numeric(Matrix.identity(4))
    assert r.value == 1 and r.fallback and r.zero_minor == (1, 1, 2)
    J = Matrix.from_function(4, lambda i, j: 2 if i == j else 1)
    r = det_condensation_numeric(J)
    assert r.value == 5 and not r.fallback
    rng = random.Random(11)
    M = rand_matrix(rng, 5)
    assert det_condensation_numeric(M).value == det_fraction_free(M)
    Z = Matrix([[1, 2, 3], [4, 0, 6], [7, 8, 10]])
    r = det_condensation_numeric(Z)
    assert r.fallback and r.value == det_fraction_free(Z)


def test_singular_and_pivoting():
    assert det_fraction_free(Matrix([[0, 1], [1, 0]])) == -1
    assert det_fraction_free(Matrix([[1, 2], [2, 4]])) == 0


def test_polynomial_bareiss_beyond_cofactor_size():
    M = build_matrix("T", 5, m=2)
    assert det_fraction_free(M).evaluate({"x": 3}) == det_fraction_free(build_matrix("T", 5, m=2, x=3))


def test_desnanot_jacobi_random():
    rng = random.Random(2)
    for n in (4, 5):
        for _ in range(5):
            assert desnanot_jacobi_holds(rand_matrix(rng, n))


def test_nullspace():
    basis = nullspace([[1, 1, 0], [0, 1, 1]], 3)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and v[1] + v[2] == 0


def test_toeplitz_splitting_examples():
    r = verify_toeplitz_splitting({0: 1}, 2)
    assert r.passed and r.details["E_odd"] == 1
    u = {k: __import__("math").comb(4, 2 - k) for k in range(-2, 3)}
    assert verify_toeplitz_splitting(u, 2).passed
    with pytest.raises(NotEvenError):
        verify_toeplitz_splitting({1: 1}, 2)


def test_even_variant_from_text_fails_generically():
    r = verify_toeplitz_splitting({0: 3, 1: 1, -1: 1, 2: 2, -2: 2}, 2)
    assert r.passed
    assert r.details["even_variant_holds"] is False
