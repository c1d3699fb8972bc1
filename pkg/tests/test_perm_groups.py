import math
import os
import random

import pytest
from hypothesis import given

from gpstab.graph_core import (build_graph, complete_bipartite_graph, complete_graph, cycle_graph,
                               empty_graph, path_graph)
from gpstab.perm_groups import (DEFAULT_CAP, CapExceeded, GroupElements, Structure, automorphism_chain,
                                automorphism_order, automorphisms, automorphisms_bruteforce,
                                compose, cycle_string, default_cap, from_cycles, identity, inverse,
                                is_automorphism, is_isomorphic, is_permutation, is_vertex_transitive,
                                isomorphism_exists, orbits_of, structure_chain)

from conftest import graphs, permutations_of

PETERSEN = build_graph(10, [(i, (i + 1) % 5) for i in range(5)]
                       + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
                       + [(i, i + 5) for i in range(5)])
CUBE = build_graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def test_compose_is_left_to_right():
    p = from_cycles(3, (0, 1))
    q = from_cycles(3, (1, 2))
    # p first, then q: 0 -> 1 -> 2
    assert compose(p, q)[0] == 2
    assert compose(p, inverse(p)) == identity(3)


def test_cycles_round_trip():
    p = from_cycles(6, (0, 2), (3, 5))
    assert p == (2, 1, 0, 5, 4, 3)
    assert cycle_string(p) == "(0 2)(3 5)"
    assert cycle_string(identity(3)) == "()"
    with pytest.raises(ValueError):
        from_cycles(3, (0, 1), (1, 2))


def test_is_permutation():
    assert is_permutation((1, 0, 2))
    assert not is_permutation((1, 1, 2))
    assert not is_permutation((0, 3))


def test_orbits_of():
    assert orbits_of(5, [from_cycles(5, (0, 1)), from_cycles(5, (1, 2))]) == [
        frozenset({0, 1, 2}), frozenset({3}), frozenset({4})]


@pytest.mark.parametrize("G, order", [
    (complete_graph(1), 1),
    (complete_graph(5), 120),
    (cycle_graph(7), 14),
    (path_graph(5), 2),
    (empty_graph(4), 24),
    (PETERSEN, 120),
    (CUBE, 48),
    (complete_bipartite_graph(3, 3), 72),
    (complete_bipartite_graph(2, 3), 12),
    (complete_graph(9), 362880),
])
def test_known_orders(G, order):
    assert automorphism_order(G) == order


def test_known_orders_bruteforce_agree():
    for G in (PETERSEN.induced(range(8)), CUBE, cycle_graph(8), complete_bipartite_graph(2, 3)):
        assert automorphisms(G).elements == automorphisms_bruteforce(G).elements


def test_cap():
    with pytest.raises(CapExceeded) as exc:
        automorphisms(complete_graph(8), cap=1000)
    assert exc.value.size == 40320 and exc.value.cap == 1000
    # the order itself is never capped
    assert automorphism_order(complete_graph(12)) == math.factorial(12)


def test_cap_env(monkeypatch):
    assert default_cap() == DEFAULT_CAP
    monkeypatch.setenv("GPS_MAX_AUT", "50")
    assert default_cap() == 50
    with pytest.raises(CapExceeded):
        automorphisms(cycle_graph(30))


def test_group_elements_closed():
    grp = automorphisms(PETERSEN)
    assert grp.order == 120 and grp.is_closed()
    assert grp.orbits() == [frozenset(range(10))]


def test_vertex_transitive():
    assert is_vertex_transitive(PETERSEN)
    assert is_vertex_transitive(cycle_graph(9))
    assert not is_vertex_transitive(path_graph(3))
    assert not is_vertex_transitive(complete_bipartite_graph(2, 3))


def test_random_elements_are_automorphisms():
    chain = automorphism_chain(complete_graph(10))
    rng = random.Random(1)
    for _ in range(50):
        assert is_automorphism(complete_graph(10), chain.random_element(rng))


def test_structure_colours_and_relations():
    # colouring 0 apart fixes it
    C5 = cycle_graph(5)
    S = Structure(5, [C5.rows], [1, 0, 0, 0, 0])
    assert structure_chain(S).order == 2
    # a second relation that breaks the reflection
    arc = [1 << ((v + 1) % 5) for v in range(5)]
    assert structure_chain(Structure(5, [C5.rows, arc])).order == 5


def test_is_isomorphic():
    G = cycle_graph(6)
    p = (3, 5, 0, 2, 4, 1)
    H = G.relabel(p)
    iso = is_isomorphic(G, H)
    assert iso is not None and all(H.has_edge(iso[u], iso[v]) for u, v in G.edges)
    assert is_isomorphic(cycle_graph(6), build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])) is None
    # lexicographically least: identity when the graphs are equal
    assert is_isomorphic(PETERSEN, PETERSEN) == identity(10)


def test_isomorphism_regular_pair_same_refinement():
    # K3,3 and the prism are both 3-regular on 6 vertices
    prism = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    assert not isomorphism_exists(prism, complete_bipartite_graph(3, 3))
    assert is_isomorphic(prism, complete_bipartite_graph(3, 3)) is None


@given(graphs(max_n=7))
def test_engine_matches_bruteforce(G):
    assert automorphisms(G).elements == automorphisms_bruteforce(G).elements


@given(graphs(min_n=1, max_n=7).flatmap(lambda G: permutations_of(G.n).map(lambda p: (G, p))))
def test_isomorphism_of_relabeling(args):
    G, p = args
    H = G.relabel(p)
    assert isomorphism_exists(G, H)
    iso = is_isomorphic(G, H)
    assert iso is not None
    assert G.relabel(iso) == H
    assert automorphism_order(H) == automorphism_order(G)


@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_existence_consistent(G, H):
    brute = G.n == H.n and any(G.relabel(p) == H for p in automorphisms_bruteforce(empty_graph(G.n)))
    assert isomorphism_exists(G, H) == brute
    assert (is_isomorphic(G, H) is not None) == brute


@given(graphs(min_n=1, max_n=9))
def test_chain_order_is_group_size(G):
    chain = automorphism_chain(G)
    elements = set(chain.iter_elements())
    assert len(elements) == chain.order
    assert all(is_automorphism(G, g) for g in elements)
