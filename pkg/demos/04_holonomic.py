"""The holonomic ansatz at (m, x) = (2, 3).

Kernel vectors of the top rows of A_n are computed, two recurrences are
checked on them, guessing recovers them, and t_n rebuilds the determinant.
"""

from detlab.catalog import tn_closed_form
from detlab.holonomic import (compute_kernel_table, guess_recurrence, in_span, known_recurrences, t_value,
                              verify_identities, verify_paper_recurrences, verify_unrolling)

m, x, N = 2, 3, 15
table = compute_kernel_table(m, x, N)
for n in range(1, 5):
    print(f"c[{n}] = {[str(c) for c in table.rows[n - 1]]}")

r = verify_paper_recurrences(m, x, N, table=table)
print("\nrecurrence violations:", r.details["first"]["violations"], r.details["second"]["violations"])
print("unrolling from c11=1, c12=0, c22=1 reproduces the table:", verify_unrolling(m, x, N, table).status)
print("c_nn = 1 and s_in = 0:", verify_identities(m, x, N).status)

for rec in known_recurrences(m, x):
    basis = guess_recurrence(table, rec.support, 4)
    print(f"guessing on support {list(rec.support)}: {len(basis)} solutions, known one inside: {in_span(basis, rec)}")

prod = 1
print("\n n   t_n          Gamma form")
for n in range(1, 8):
    t = t_value(m, x, table, n)
    prod *= t
    print(f"{n:>2}   {str(t):<12} {tn_closed_form(n, m, x)}")
print("prod t_1..t_7 =", prod)
