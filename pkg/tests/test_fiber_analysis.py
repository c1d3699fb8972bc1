import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gpstab.enumeration import enumerate_graphs
from gpstab.fiber_analysis import (LEMMAS, LemmaViolation, ProfileError, _Tables, f_value,
                                   fiber_sets, lemma_hypotheses, profile, verify_lemma)
from gpstab.graph_core import GraphError, build_graph, complete_graph, cycle_graph, path_graph, regular_valency
from gpstab.perm_groups import CapExceeded, is_automorphism
from gpstab.products import direct_product

K2, C3, K4, C4, C5 = complete_graph(2), cycle_graph(3), complete_graph(4), cycle_graph(4), cycle_graph(5)
PRISM = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])

SUITE = [(K4, C5), (C3, K4), (C5, K4), (K2, C3), (C5, K2), (PRISM, K2), (K2, C5)]


def brute_f(G, S, a, b):
    """Shared neighbours straight from the product adjacency rule."""
    (u, i), (v, j) = a, b
    adj = lambda x, y: G.has_edge(x[0], y[0]) and S.has_edge(x[1], y[1])
    verts = [(w, k) for w in range(G.n) for k in range(S.n)]
    common = sum(adj(a, c) and adj(b, c) for c in verts)
    return Fraction(common, sum(adj(a, c) for c in verts))


def test_f_values_k4_c5():
    prod = direct_product(K4, C5)
    ix = prod.index
    assert f_value(prod, ix(0, 0), ix(0, 0)) == 1
    assert f_value(prod, ix(0, 0), ix(1, 0)) == Fraction(2, 3)
    assert f_value(prod, ix(0, 0), ix(0, 2)) == Fraction(1, 2)
    assert f_value(prod, ix(0, 0), ix(1, 2)) == Fraction(1, 3)
    assert f_value(prod, ix(0, 0), ix(0, 1)) == 0


@pytest.mark.parametrize("G,S", [(K4, C5), (path_graph(3), C3), (C4, path_graph(4))])
def test_f_matches_bruteforce(G, S):
    prod = direct_product(G, S)
    for a in range(prod.product.n):
        if prod.product.degrees[a] == 0:
            continue
        for b in range(prod.product.n):
            assert f_value(prod, a, b) == brute_f(G, S, prod.pair(a), prod.pair(b))


def test_f_isolated_vertex():
    prod = direct_product(build_graph(3, [(0, 1)]), K2)
    with pytest.raises(GraphError):
        f_value(prod, prod.index(2, 0), 0)


def test_profile_c5():
    p = profile(C5, 0)
    assert p.levels == ((1, frozenset({2, 3})),)
    assert p.d_zero == {0} and p.d_last == {1, 4}
    assert p.valency_identity and p.t == 1
    assert [p.level_of(x) for x in range(5)] == [0, 2, 1, 1, 2]


def test_profile_k4():
    p = profile(K4, 2)
    assert p.levels == ((2, frozenset({0, 1, 3})),)
    assert p.d_last == frozenset()
    assert p.valency_identity


def test_profile_errors():
    with pytest.raises(ProfileError, match="vertex-transitive"):
        profile(path_graph(3), 0)
    with pytest.raises(ProfileError, match="does not exceed"):
        profile(C4, 0)
    with pytest.raises(ProfileError):
        profile(build_graph(3, []), 0)
    with pytest.raises(GraphError):
        profile(C5, 7)


def test_fiber_sets_k4_c5():
    prod = direct_product(K4, C5)
    ix = prod.index
    for u in range(4):
        fs = fiber_sets(prod, ix(u, 0))
        assert fs.x == fs.y == {ix(u, 2), ix(u, 3)}
        assert fs.xk[1] == fs.x


def test_fiber_sets_need_standing_hypotheses():
    with pytest.raises(GraphError, match="coprime"):
        fiber_sets(direct_product(C4, C5), 0)
    with pytest.raises(GraphError, match="regular"):
        fiber_sets(direct_product(path_graph(3), K2), 0)


def _regular_connected(lo, hi):
    return [G for n in range(lo, hi + 1) for G in enumerate_graphs(n, connected_only=True)
            if regular_valency(G)]


REGULAR = _regular_connected(2, 6)


def _check_routes(G, S):
    prod = direct_product(G, S)
    T = _Tables(prod)
    vt = True
    try:
        T.add_levels([profile(S, i) for i in range(S.n)])
    except ProfileError:
        vt = False
    ylev = T.y_levels() if vt else None
    for a in range(prod.product.n):
        fs = fiber_sets(prod, a)
        assert fs.x == set(np.flatnonzero(T.X[a]).tolist())
        assert fs.y == set(np.flatnonzero(T.Y[a]).tolist())
        assert fs.y <= fs.x
        assert (fs.xk is not None) == vt
        if vt:
            for k in range(1, len(fs.xk)):
                assert fs.xk[k] == set(np.flatnonzero(T.level[a] == k).tolist())
            for k in range(1, len(fs.yk)):
                assert fs.yk[k] == set(np.flatnonzero(ylev[k - 1][a]).tolist())
            assert set().union(*fs.xk[1:]) <= fs.x


@pytest.mark.parametrize("G,S", SUITE)
def test_dual_route_suite(G, S):
    _check_routes(G, S)


@given(st.sampled_from(REGULAR), st.sampled_from(REGULAR))
@settings(max_examples=40)
def test_dual_route_regular_pairs(G, S):
    if math.gcd(regular_valency(G), regular_valency(S)) != 1:
        with pytest.raises(GraphError):
            fiber_sets(direct_product(G, S), 0)
        return
    _check_routes(G, S)


@pytest.mark.parametrize("G,S", SUITE)
def test_suite_lemmas_pass(G, S):
    for name in LEMMAS:
        res = verify_lemma(name, G, S)
        assert res.status in ("Pass", "HypothesesNotMet"), (name, res)


def test_hypotheses_not_met():
    res = verify_lemma("vs2", C4, C5)
    assert res.status == "HypothesesNotMet"
    assert "gamma not R-thin" in res.reasons
    assert "valencies not coprime" in res.reasons
    assert res.note


def test_bipartite_lemma_patterns():
    assert lemma_hypotheses("SigmaBip", C5, K2) == []
    assert lemma_hypotheses("GammaBip", K2, C5) == []
    assert lemma_hypotheses("GammaBip", C5, K2)
    assert verify_lemma("SigmaBip", C5, K2).status == "Pass"
    assert verify_lemma("GammaBip", K2, C5).status == "Pass"


def test_unknown_lemma():
    with pytest.raises(KeyError):
        verify_lemma("nope", K4, C5)


def test_sampled_mode():
    res = verify_lemma("even", K4, C5, samples=25, seed=3)
    assert res.status == "Pass" and res.checked == 25


def test_exhaustive_cap():
    with pytest.raises(CapExceeded):
        verify_lemma("X", K4, C5, cap=10)


@pytest.mark.parametrize("name", ["X", "hom", "Xk", "different"])
def test_mutated_elements_are_caught(name):
    prod = direct_product(K4, C5)
    N = prod.product.n
    rng = random.Random(7)
    bad = []
    while len(bad) < 5:
        s = list(range(N))
        rng.shuffle(s)
        if not is_automorphism(prod.product, tuple(s)):
            bad.append(tuple(s))
    res = verify_lemma(name, K4, C5, elements=bad, raise_on_fail=False)
    assert res.status == "Fail" and res.witness
    with pytest.raises(LemmaViolation):
        verify_lemma(name, K4, C5, elements=bad)
