"""
Idempotents, multiplicities and the Frame number of J(5, 2)
===========================================================

The Johnson scheme on 2-subsets of a 5-set is symmetric and rational: its
central primitive idempotents have rational entries.  We compute them
exactly, read off degrees and multiplicities, and reduce them modulo
primes that do not divide the Frame number.
"""

from schemebounds import (
    check_ha003,
    check_theorem_160707a,
    johnson,
    make_field,
    reduce_idempotent,
    rkmin_search,
    spectral_data,
)
from sympy import primerange

sch = johnson(5, 2)
spec = spectral_data(sch, mode="exact")
print(sch, "valencies", sch.valencies.tolist())

###############################################################################
# Each idempotent is stored by its value on each basis relation.  The
# principal one is J/10.

for i, P in enumerate(spec.idempotents):
    d, m = spec.params[i]
    tag = " (principal)" if i == spec.principal_index else ""
    print(f"P{i}{tag}: entries {[str(x) for x in P]}, degree {d}, multiplicity {m}")
print("m_min =", spec.m_min, " Frame number =", spec.frame)

###############################################################################
# 900 = 2^2 3^2 5^2, so 2, 3 and 5 are the bad primes.  For every other
# prime the reduced idempotent keeps its rank.

for p in primerange(2, 30):
    if spec.frame % p == 0:
        print(f"p={p}: divides the Frame number, skipped")
        continue
    ranks = [reduce_idempotent(sch, spec, i, p).rank() for i in range(3)]
    print(f"p={p}: ranks over F_p {ranks}")

###############################################################################
# With m_min = 4 and p = 7 the rank bound gives |X| <= (7^4 - 1)/6 = 400.
# The minimum rank over F_7 is found directly as well.

print(check_theorem_160707a(sch, 7).computed)
print(check_theorem_160707a(sch, 3).reason)
rep = rkmin_search(sch, make_field(7))
print("rk_min over F_7:", rep.rkmin, "witness", rep.witness)
print(check_ha003(sch, 7).computed)
