from itertools import permutations

import pytest

from detlab.catalog import build_matrix, eval_product
from detlab.combinatorics import (BoxSpec, count_lgv_paths, count_plane_partitions, symmetric_under_permutations,
                                  verify_macmahon_triangle)
from detlab.detcore import det
from detlab.errors import BadSpecError, SizeLimitError


def test_examples():
    assert count_plane_partitions((1, 1, 1)) == 2
    assert count_plane_partitions((2, 2, 2)) == 20
    assert count_plane_partitions((3, 2, 0)) == 1
    for variant in ("toeplitz", "shifted"):
        assert count_lgv_paths((1, 1, 1), variant) == 2
        assert count_lgv_paths((2, 2, 2), variant) == 20


def test_guards():
    with pytest.raises(SizeLimitError):
        count_plane_partitions((7, 1, 1))
    with pytest.raises(BadSpecError):
        BoxSpec(-1, 0, 0)
    with pytest.raises(BadSpecError):
        count_lgv_paths((1, 1, 1), "diagonal")


def test_plane_partitions_match_product():
    for a in range(5):
        for b in range(5):
            for c in range(5):
                assert count_plane_partitions((a, b, c)) == eval_product("rhs.macmahon", {"a": a, "b": b, "c": c})


def test_lgv_instances():
    for a in range(4):
        for b in range(4):
            for c in range(1, 4):
                assert count_lgv_paths((a, b, c), "toeplitz") == det(build_matrix("MacMahonToeplitz", c, a=a, b=b))
                assert count_lgv_paths((a, b, c), "shifted") == det(build_matrix("SymmetricBinomial", c, a=a, b=b))


def test_symmetry():
    for box in [(1, 2, 3), (4, 2, 1), (3, 3, 2)]:
        ok, _ = symmetric_under_permutations(box)
        assert ok


def test_triangle():
    r = verify_macmahon_triangle((2, 2, 2))
    assert r.passed and len(r.details) == 9 and r.details["product"] == 20
    r = verify_macmahon_triangle((3, 1, 2))
    assert r.passed and r.details["plane_partitions"] == eval_product("rhs.macmahon", {"a": 3, "b": 1, "c": 2})
    vals = {p: verify_macmahon_triangle(p).details["product"] for p in permutations((3, 1, 2))}
    assert len(set(vals.values())) == 1
