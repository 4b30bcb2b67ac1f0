"""Evaluate det T_{n,m}(x) as a polynomial in x and compare with the product.

Run:  python demos/01_conjecture.py
"""

from detlab.catalog import build_matrix, eval_product
from detlab.detcore import det

print("det T_{n,m}(x) against prod (x+i-j)(x+2i+j-2) / ((x+2i-j)(i+j-1))\n")
for n in range(1, 5):
    for m in range(1, 4):
        d = det(build_matrix("T", n, m=m))
        num, den = eval_product("rhs.conjecture1", {"n": n, "m": m}, symbolic="x")
        print(f"n={n} m={m}  det * den == num: {d * den == num}")

print("\nsmall closed forms:")
for n, m in [(1, 1), (2, 1), (2, 2)]:
    print(f"  det T_{n},{m}(x) = {det(build_matrix('T', n, m=m))}")

print("\nat x = m the matrix is A_{n,m}; the Cigler product takes over:")
for n in range(1, 6):
    row = [det(build_matrix("A", n, m=m)) for m in range(1, 6)]
    cig = [eval_product("rhs.cigler", {"n": n, "m": m}) for m in range(1, 6)]
    print(f"  n={n}: {row}  {'ok' if row == cig else 'MISMATCH'}")
