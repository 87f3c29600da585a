"""
Column relations of adjacency-algebra elements
==============================================

For a matrix A and a scalar lam, e_lam(A) relates x to y when lam times
column x equals column y.  For A in the adjacency algebra these relations
are unions of basis relations, and for a primitive scheme e_1(A) is just
the diagonal unless A is a multiple of J.
"""

import numpy as np

from schemebounds import (
    check_theorem_110707c,
    combine,
    e_lambda,
    e_union,
    hamming,
    johnson,
    make_field,
)

rng = np.random.default_rng(2)

###############################################################################
# An imprimitive example first: the 3-cube.  Antipodal words have
# proportional columns for the right coefficient choices.

cube = hamming(3, 2)
F3 = make_field(3)
for _ in range(5):
    c = rng.integers(0, 3, cube.s)
    A = combine(cube, F3, c)
    rels = {lam: e_lambda(cube, A, lam).colors for lam in range(3)}
    print("coeffs", c.tolist(), "-> e_lam colors", {k: sorted(v) for k, v in rels.items()})

###############################################################################
# A primitive scheme: e_1 is the diagonal for every A outside F J.

j = johnson(5, 2)
F7 = make_field(7)
for _ in range(5):
    c = rng.integers(0, 7, j.s)
    A = combine(j, F7, c)
    print("coeffs", c.tolist(), "e_1:", sorted(e_lambda(j, A, 1).colors),
          "e:", sorted(e_union(j, A).colors))

###############################################################################
# Over the rationals the union over all scalars is decided by pairwise
# linear dependence of columns.

A = np.array([1, 2, -2, 0])[cube.color]
print("over Q:", sorted(e_union(cube, A).colors))

###############################################################################
# The randomized check sweeps many tuples and every scalar.

for field in (F3, make_field(2, 2), "Q"):
    r = check_theorem_110707c(cube, field, trials=100)
    print(r.inputs["field"], r.verdict, r.computed)
