"""
Coloring with random orderings
==============================

Draw l random orderings and give each vertex the index of the first ordering
whose S_sigma contains it.  Classes are independent, so any fully covered
outcome is a proper coloring.  Retry until coverage is complete.
"""

import numpy as np

from lkneser import coloring as col

n, r, t = 6, 4, 2
l = col.default_l(n, r, t)
print("l =", l, " expected uncovered vertices:", col.expected_uncovered(n, r, t, l))

rng = np.random.default_rng(0)
c = col.las_vegas_coloring(n, r, t, rng)
print("proper:", col.is_proper(c.graph, c), " colors used:", c.n_colors_used, " attempts:", c.meta["attempts"])

# with very few orderings most vertices stay uncovered
for few in (1, 2, 4, 8):
    out = col.random_permutation_coloring(n, r, t, few, col.trial_rng(1, few))
    print(f"l={few:2d}: {out.uncovered} of {len(out.graph)} uncovered")

# compare against the deterministic bounds
for key, val in col.bound_report(n, r, t).items():
    print(f"  {key}: {val}")

# exact chi is only affordable on smaller instances
small = col.las_vegas_coloring(5, 4, 2, rng)
print("U_2(5,4): random palette", small.n_colors_used, " chi exact", col.chi_exact(small.graph))
