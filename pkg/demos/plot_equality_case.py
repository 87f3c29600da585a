"""
A primitive scheme meeting the rank bound exactly
=================================================

The cyclotomic scheme on Z_31 with subgroup {1, 2, 4, 8, 16} has seven
basis relations.  Over F_2 the smallest rank of a matrix in its adjacency
algebra (apart from multiples of J) is 5, and 31 = 2^5 - 1, so the point
count (q^r - 1)/(q - 1) is attained with equality.
"""

import numpy as np

from schemebounds import (
    check_theorem_180707b,
    combine,
    cyclotomic,
    is_primitive,
    make_field,
    parse_field,
    rkmin_search,
)
from schemebounds.generators import cyclotomic_subgroup

sch = cyclotomic(31, 5)
print(sch)
print("subgroup H:", cyclotomic_subgroup(31, 5))
print("valencies:", sch.valencies.tolist(), "primitive:", is_primitive(sch))

###############################################################################
# Search one representative per projective class of coefficient tuples.
# There are (2^7 - 1)/(2 - 1) = 127 classes; the class of J is skipped.

F2 = make_field(2)
rep = rkmin_search(sch, F2)
print(f"rk_min = {rep.rkmin} after {rep.candidates_examined} candidates")
print("first minimizing tuple:", rep.witness)

###############################################################################
# The witness is an honest 31 x 31 matrix over F_2 of rank 5.  Its columns
# are 31 distinct nonzero vectors in a 5-dimensional space, i.e. every
# point of PG(4, 2) shows up exactly once.

A = combine(sch, F2, rep.witness)
print("rank:", A.rank())
cols = {tuple(c) for c in A.entries.T}
print("distinct columns:", len(cols), "zero column present:", tuple([0] * 31) in cols)

###############################################################################
# The packaged check reports the bound and flags the equality.

report = check_theorem_180707b(sch, F2)
print(report.verdict, report.computed)
assert report.computed["equality"]

# other small fields leave slack
for q in (3, 4, 5):
    r = rkmin_search(sch, parse_field(q))
    bound = (q**r.rkmin - 1) // (q - 1)
    print(f"q={q}: rk_min={r.rkmin}, bound={bound}, slack={bound - sch.n}")

print("bound values for q = 2:", [(r, 2**r - 1) for r in range(1, 7)])
print("mean row weight of the witness:", np.mean(A.entries.sum(axis=1)))
