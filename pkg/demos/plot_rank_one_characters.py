"""
When does a rank-one matrix appear?
===================================

For the thin scheme of Z_p the adjacency algebra over F_q is the group
algebra F_q[Z_p].  A rank-one element exists exactly when F_q holds a
primitive p-th root of unity, that is when p divides q - 1.  We tabulate
rk_min for small p and q.
"""

from sympy import factorint

from schemebounds import (
    check_theorem_200707b,
    combine,
    cyclic_group_table,
    from_group,
    parse_field,
    rkmin_search,
)

prime_powers = [q for q in range(2, 30) if len(factorint(q)) == 1]

print("q    " + "".join(f"Z_{p:<4}" for p in (3, 5, 7)))
for q in prime_powers:
    row = []
    for p in (3, 5, 7):
        if q**p > 10**6:
            row.append("  -   ")
            continue
        r = rkmin_search(from_group(cyclic_group_table(p)), parse_field(q)).rkmin
        row.append(f"{r:<2}{'*' if (q - 1) % p == 0 else ' '}   ")
    print(f"{q:<5}" + "".join(row))
print("(* marks p | q - 1)")

###############################################################################
# Over F_11 the element 3 has order 5, and the character sum
# sum_i 3^i A_{g^i} is a rank-one matrix.

z5 = from_group(cyclic_group_table(5))
F11 = parse_field(11)
A = combine(z5, F11, [pow(3, i, 11) for i in range(5)])
print(A.entries)
print("rank:", A.rank())

###############################################################################
# Over F_2 there is no fifth root of unity and the smallest rank is 4.
# The biconditional check records both directions.

for q in (2, 11, 16):
    r = check_theorem_200707b(z5, parse_field(q))
    print(q, r.verdict, {k: r.computed[k] for k in ("rkmin", "forward", "converse")})
