"""Plane partitions in a box, counted three ways."""

from detlab.catalog import build_matrix, eval_product
from detlab.combinatorics import count_lgv_paths, count_plane_partitions
from detlab.detcore import det

print(" a b c   arrays  paths(T)  paths(S)   det(T)   det(S)   product")
for box in [(1, 1, 1), (2, 2, 2), (3, 1, 2), (2, 3, 3), (3, 3, 3)]:
    a, b, c = box
    vals = (count_plane_partitions(box), count_lgv_paths(box, "toeplitz"), count_lgv_paths(box, "shifted"),
            det(build_matrix("MacMahonToeplitz", c, a=a, b=b)), det(build_matrix("SymmetricBinomial", c, a=a, b=b)),
            eval_product("rhs.macmahon", {"a": a, "b": b, "c": c}))
    print(f" {a} {b} {c}  " + "".join(f"{v:>9}" for v in vals))
