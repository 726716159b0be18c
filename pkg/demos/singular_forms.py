"""
Forms vanishing on n_B are degenerate
=====================================
"""

import numpy as np

from so2n.singular import BIndexSet, rank, random_vanishing_form, degeneracy_theorem_check

B = BIndexSet(8)
print("B =", B.pairs)

rng = np.random.default_rng(1)
form = random_vanishing_form(B, rng)
for row in form.matrix:
    print(" ".join(f"{int(x):3d}" for x in row))
print("rank", rank(form), "of", B.n)

for n in (4, 6, 8):
    r = degeneracy_theorem_check(n, 1000, seed=0)
    print(n, r.rank_histogram, "pfaffian zero:", r.pfaffian_identically_zero)
