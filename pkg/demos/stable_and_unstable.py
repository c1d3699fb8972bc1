"""
Stable and unstable products
============================

A pair (G, S) is stable when every automorphism of the direct product
G x S comes from an automorphism of G and one of S. Here we look at two
small pairs that share the same S: one is stable, one is not.
"""

from gpstab import classify_pair, read_graph
from gpstab.cli import fixture_path

S = read_graph(fixture_path("sigma.txt"))
print("S has", S.n, "vertices and", S.num_edges, "edges")

# first pair: the product gains nothing
G1 = read_graph(fixture_path("gamma1.txt"))
r1 = classify_pair(G1, S)
print("G1:", r1.aut_gamma_order, "x", r1.aut_sigma_order, "->", r1.aut_product_order, r1.classification.value)

# second pair: G2 is disconnected, which already doubles the group
G2 = read_graph(fixture_path("gamma2.txt"))
r2 = classify_pair(G2, S)
print("G2:", r2.aut_gamma_order, "x", r2.aut_sigma_order, "->", r2.aut_product_order, r2.classification.value)
print("   reasons:", ", ".join(r2.reasons))

# Q fixes every fibre V(G) x {i}, P may permute them
print("Q and P for G1:", r1.q_order, r1.p_order)
print("Q and P for G2:", r2.q_order, r2.p_order)
