"""
Two-fold automorphisms and nondiagonal witnesses
================================================

A two-fold automorphism of G is a pair of permutations (alpha, beta) with
u ~ v exactly when alpha(u) ~ beta(v). Pairs with alpha == beta are plain
automorphisms; the others explain extra symmetry of G x K2.
"""

from gpstab import classify_pair, complete_graph, cycle_graph, direct_product, parse_graph6
from gpstab.perm_groups import cycle_string
from gpstab.sigma_auto import two_fold_pairs
from gpstab.stability import sigma_to_product

C6 = cycle_graph(6)
pairs = two_fold_pairs(C6)
odd = [p for p in pairs if p.nontrivial]
print(len(pairs), "two-fold pairs of C6,", len(odd), "with alpha != beta")
for p in odd[:3]:
    print("  alpha", cycle_string(p.alpha), " beta", cycle_string(p.beta))

# C6 is bipartite, so C6 x K2 splits in two and its group is huge
r = classify_pair(C6, complete_graph(2))
print("C6 x K2:", r.aut_product_order, "automorphisms,", r.classification.value, r.reasons)

# A 4-regular graph on 8 vertices with none of the trivial defects.
# Its product with K2 is still unstable, and a nondiagonal
# Sigma-automorphism is the certificate.
G = parse_graph6("GBj^V_")
r = classify_pair(G, complete_graph(2))
print("G x K2:", r.aut_gamma_order, "x", r.aut_sigma_order, "->", r.aut_product_order, r.classification.value)
alpha, beta = r.witness.perms
print("  witness alpha", cycle_string(alpha), " beta", cycle_string(beta))
prod = direct_product(G, complete_graph(2))
print("  as a product automorphism:", sigma_to_product(prod, r.witness))
