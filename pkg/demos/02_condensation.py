"""Dodgson condensation as an induction proof, checked point by point.

The three ingredients are tried for the D family, where they all hold, and
for the U family, where the corner minors are not family members.
"""

from detlab.dodgson import CLAIMS, check_minor_shift, triangle_grid, verify_claim, verify_condensation_functional_eq

grid = triangle_grid(range(3, 7), 5)
r = verify_claim("D", grid)
print(f"D claim on {len(grid)} points: {r.status}  parts={r.details['parts']}")

bad = CLAIMS["D"].mutated()
r = verify_condensation_functional_eq(bad, grid)
print(f"same claim with one exponent bumped: {r.status}, witness {r.witness}")

mirrored = triangle_grid(range(3, 7), 5, order="a<=b")
r = verify_claim("U", mirrored)
print(f"\nU claim: {r.status}  parts={r.details['parts']}")
w = check_minor_shift("U", 3, 0, 2).witness
print("first shift mismatch at n=3, a=0, b=2:", w)
print("the minors keep the binomial top 2b, so U(a+1, b+1) never matches them.")
