"""Canonical forms and isomorphism-class enumeration of small graphs.

The canonical form of a graph is its relabeling whose upper-triangle bit
string, read in graph6 order ``(0,1),(0,2),(1,2),(0,3),...``, is
lexicographically least. It is found by trying all n! relabelings at once
with numpy, so it is limited to n <= 8.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .graph_core import Graph, GraphError, build_graph, is_connected
from .perm_groups import automorphism_chain, inverse, isomorphism_exists, refinement_certificate

MAX_ENUM_ORDER = 8


def pair_order(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 (column-major upper triangle) order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


@lru_cache(maxsize=None)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)


def _codes(G: Graph) -> np.ndarray:
    """Bit-string code of every relabeling; row k of the perm table puts
    old vertex ``q[k]`` at new position ``k``."""
    n = G.n
    perms = _all_perms(n)
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in G.edges:
        A[u, v] = A[v, u] = 1
    pairs = pair_order(n)
    codes = np.zeros(len(perms), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        codes |= A[perms[:, i], perms[:, j]] << (len(pairs) - 1 - k)
    return codes


def canonical_code(G: Graph) -> int:
    if G.n > MAX_ENUM_ORDER:
        raise GraphError(f"canonical form limited to n <= {MAX_ENUM_ORDER}")
    if G.n < 2:
        return 0
    return int(_codes(G).min())


def canonical_graph(G: Graph) -> Graph:
    """The relabeling of G with the least bit string."""
    if G.n > MAX_ENUM_ORDER:
        raise GraphError(f"canonical form limited to n <= {MAX_ENUM_ORDER}")
    if G.n < 2:
        return build_graph(G.n, [])
    q = _all_perms(G.n)[int(_codes(G).argmin())]
    return G.relabel(inverse(tuple(int(x) for x in q)))


def canonical_graph6(G: Graph) -> str:
    from .formats import emit_graph6
    return emit_graph6(canonical_graph(G))


def _subset_orbit_reps(H: Graph) -> list[int]:
    """One neighbour set per orbit of Aut(H) on subsets of V(H)."""
    gens = automorphism_chain(H).generators
    seen = set()
    reps = []
    for mask in range(1 << H.n):
        if mask in seen:
            continue
        reps.append(mask)
        seen.add(mask)
        queue = [mask]
        for m in queue:
            for g in gens:
                img = 0
                for v in range(H.n):
                    if m >> v & 1:
                        img |= 1 << g[v]
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return reps


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple:
    if n == 0:
        return (build_graph(0, []),)
    if n == 1:
        return (build_graph(1, []),)
    buckets: dict = {}
    for H in _classes(n - 1):
        for mask in _subset_orbit_reps(H):
            rows = list(H.rows) + [mask]
            for v in range(n - 1):
                if mask >> v & 1:
                    rows[v] |= 1 << (n - 1)
            G = Graph(n, tuple(rows))
            bucket = buckets.setdefault(refinement_certificate(G), [])
            if not any(isomorphism_exists(G, K) for K in bucket):
                bucket.append(G)
    reps = [(canonical_code(G), canonical_graph(G)) for b in buckets.values() for G in b]
    reps.sort(key=lambda t: t[0])
    return tuple(G for _, G in reps)


def enumerate_graphs(n: int, connected_only: bool = False) -> list[Graph]:
    """One canonical representative per isomorphism class of order n,
    sorted by canonical bit string."""
    if n < 0 or n > MAX_ENUM_ORDER:
        raise GraphError(f"enumeration limited to 0 <= n <= {MAX_ENUM_ORDER}")
    graphs = list(_classes(n))
    if connected_only:
        graphs = [G for G in graphs if G.n >= 1 and is_connected(G)[0]]
    return graphs
