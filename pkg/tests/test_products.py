import pytest
from hypothesis import assume, given

from gpstab.graph_core import (GraphError, build_graph, complete_graph, cycle_graph, empty_graph,
                               is_bipartite, is_connected, is_r_thin, path_graph)
from gpstab.perm_groups import isomorphism_exists
from gpstab.products import (Coprimality, boolean_square, coprimality, coprime_oracle, direct_product,
                             valency_coprime)

from conftest import graphs


def test_index_convention():
    prod = direct_product(path_graph(3), complete_graph(2))
    assert prod.index(2, 1) == 5
    assert prod.pair(5) == (2, 1)
    assert prod.pi_gamma(5) == 2 and prod.pi_sigma(5) == 1
    assert prod.fibers() == [[0, 2, 4], [1, 3, 5]]


def test_small_products():
    assert direct_product(complete_graph(2), complete_graph(2)).product == build_graph(4, [(0, 3), (1, 2)])
    # C5 x K2 is C10, K3 x K2 is C6
    assert isomorphism_exists(direct_product(cycle_graph(5), complete_graph(2)).product, cycle_graph(10))
    assert isomorphism_exists(direct_product(complete_graph(3), complete_graph(2)).product, cycle_graph(6))


def test_empty_factor_rejected():
    with pytest.raises(GraphError):
        direct_product(empty_graph(0), complete_graph(2))


def test_boolean_square():
    assert isomorphism_exists(boolean_square(cycle_graph(5)), cycle_graph(5))
    B6 = boolean_square(cycle_graph(6))
    assert B6.num_edges == 6 and not is_connected(B6)[0]
    assert boolean_square(complete_graph(2)).num_edges == 0
    assert boolean_square(complete_graph(4)) == complete_graph(4)


def test_valency_coprime():
    assert valency_coprime(complete_graph(4), cycle_graph(5))
    assert not valency_coprime(cycle_graph(4), cycle_graph(5))
    with pytest.raises(GraphError):
        valency_coprime(path_graph(3), cycle_graph(5))


def test_coprimality_verdicts():
    assert coprimality(complete_graph(4), cycle_graph(5)).kind is Coprimality.COPRIME
    # C6 = K2 x K3 and C10 = K2 x C5 share the factor K2
    v = coprimality(cycle_graph(6), cycle_graph(10))
    assert v.kind is Coprimality.COMMON_FACTOR
    delta, lam1, lam2 = v.factor
    assert isomorphism_exists(direct_product(delta, lam1).product, cycle_graph(6))
    assert isomorphism_exists(direct_product(delta, lam2).product, cycle_graph(10))
    # order 5 common divisor lies beyond the default bound
    assert coprime_oracle(cycle_graph(5), cycle_graph(5)).kind is Coprimality.INCONCLUSIVE
    assert coprime_oracle(cycle_graph(5), cycle_graph(5), 8).kind is Coprimality.COPRIME
    assert coprime_oracle(path_graph(2), path_graph(3)).note == "orders coprime"
    with pytest.raises(ValueError):
        coprime_oracle(cycle_graph(4), cycle_graph(4), 1)


def test_shared_factor_detected_for_products():
    G = direct_product(complete_graph(2), cycle_graph(3)).product
    H = direct_product(complete_graph(2), complete_graph(4)).product
    assert coprime_oracle(G, H).kind is Coprimality.COMMON_FACTOR


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=5))
def test_product_edges_and_degrees(G, H):
    P = direct_product(G, H)
    assert P.product.num_edges == 2 * G.num_edges * H.num_edges
    for x in range(P.product.n):
        u, i = P.pair(x)
        assert P.product.degrees[x] == G.degrees[u] * H.degrees[i]


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=5))
def test_product_commutes(G, H):
    assert isomorphism_exists(direct_product(G, H).product, direct_product(H, G).product)


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=5))
def test_product_r_thin_iff_factors(G, H):
    # an isolated vertex is copied into every fibre, giving twins
    assume(min(G.degrees) > 0 and min(H.degrees) > 0)
    assert is_r_thin(direct_product(G, H).product)[0] == (is_r_thin(G)[0] and is_r_thin(H)[0])


@given(graphs(min_n=2, max_n=5), graphs(min_n=2, max_n=5))
def test_product_connected_iff(G, H):
    want = is_connected(G)[0] and is_connected(H)[0] and not (is_bipartite(G) and is_bipartite(H))
    assert is_connected(direct_product(G, H).product)[0] == want
