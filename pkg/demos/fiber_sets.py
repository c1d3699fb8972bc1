"""
Common-neighbour ratios and fibre sets
======================================

For regular factors the ratio f(a, b) of shared product neighbours splits
into a G-part and an S-part. The sets X(a) and Y(a) built from it are
preserved by every automorphism of the product, which is what pins the
fibres down when the valencies are coprime.
"""

import numpy as np

from gpstab import complete_graph, cycle_graph, direct_product
from gpstab.fiber_analysis import f_value, fiber_sets, profile, verify_lemma

G, S = complete_graph(4), cycle_graph(5)
prod = direct_product(G, S)

# f from the base vertex (0, 0), laid out as a |G| x |S| table
table = np.array([[float(f_value(prod, 0, prod.index(v, j))) for j in range(S.n)] for v in range(G.n)])
np.set_printoptions(precision=3, suppress=True)
print(table)

fs = fiber_sets(prod, 0)
print("X(0,0) =", sorted(prod.pair(b) for b in fs.x))
print("Y(0,0) =", sorted(prod.pair(b) for b in fs.y))

# levels of the Boolean-square neighbourhood of a vertex of C5
p = profile(S, 0)
for k, (count, D) in enumerate(p.levels, start=1):
    print(f"D_{k}(0) = {sorted(D)}  ({count} common neighbours)")
print("no common neighbours:", sorted(p.d_last))

for name in ("X", "hom", "vs2", "add2"):
    res = verify_lemma(name, G, S)
    print(f"{name:5s} {res.status} over {res.checked} automorphisms")
