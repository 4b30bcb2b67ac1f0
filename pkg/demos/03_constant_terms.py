"""Constant terms of Laurent polynomials and the determinants they encode."""

from fractions import Fraction
from math import factorial

from detlab.algebra import MultiPoly
from detlab.catalog import build_matrix
from detlab.ct import constant_term, ct_main_integrand, verify_bcn, verify_morris, verify_phi_factorization
from detlab.detcore import det

t = MultiPoly.var("t")
print("CT (1+t)(1+1/t) =", constant_term((1 + t) * (1 + t ** -1)))

print("\nCT of the symmetrized integrand over n! is det T_{n,m}(x):")
for n, m, x in [(1, 1, 1), (2, 1, 1), (2, 2, 3), (3, 2, 2)]:
    ct = constant_term(ct_main_integrand(n, m, x))
    print(f"  n={n} m={m} x={x}: CT/n! = {Fraction(ct, factorial(n))}   det = {det(build_matrix('T', n, m=m, x=x))}")

print("\nMorris identity:")
for args in [(1, 1, 2, 1), (2, 1, 3, 1), (2, 2, 2, 2)]:
    r = verify_morris(*args)
    print(f"  a,b,c,m={args}: {r.status}  CT={r.details['lhs']}  {r.details.get('note', '')}")

print("\nBC_n identity (alpha, beta, n):")
for args in [(0, 1, 1), (1, 1, 2), (2, 1, 3)]:
    print(f"  {args}: {verify_bcn(*args).status}")

r = verify_phi_factorization(3)
print("\ndet T_{3,3}(x) exponents e_s of (x+s):", r.details["exponents"], r.status)
