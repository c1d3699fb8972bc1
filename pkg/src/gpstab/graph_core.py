"""Immutable simple graphs on vertices 0..n-1 and the structural predicates
used throughout the package (connectivity, bipartiteness, R-thinness,
quotients).

Adjacency is stored row-wise as Python ints used as bit-sets: bit ``v`` of
``rows[u]`` is set iff ``u`` and ``v`` are adjacent.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Malformed graph input or a vertex id out of range."""


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    rows: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        if len(self.rows) != self.n:
            raise GraphError("need one adjacency row per vertex")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {u} references a vertex >= {self.n}")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
            for v in _bits(row):
                if not self.rows[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"Graph(n={self.n}, m={self.num_edges}{tag})"

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour lists."""
        return tuple(tuple(_bits(r)) for r in self.rows)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.degrees[u]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``u`` renamed ``perm[u]``."""
        rows = [0] * self.n
        for u, v in self.edges:
            a, b = perm[u], perm[v]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph(self.n, tuple(rows), self.label)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~r & ~(1 << u) for u, r in enumerate(self.rows)))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = sorted(vertices)
        index = {v: k for k, v in enumerate(vs)}
        return build_graph(len(vs), [(index[u], index[v]) for u, v in self.edges
                                     if u in index and v in index])


@dataclass(frozen=True)
class Bipartition:
    side0: frozenset
    side1: frozenset


def _check_vertex(G: Graph, u: int) -> None:
    if not (0 <= u < G.n):
        raise GraphError(f"vertex {u} out of range for n={G.n}")


def build_graph(n: int, edges: Iterable[Sequence[int]], label: str = "") -> Graph:
    """Build a graph from an explicit edge list.

    Listing the same edge twice is an error, as is a loop or an id >= n.
    """
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    rows = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {{{u},{v}}}: vertex id out of range for n={n}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if rows[u] >> v & 1:
            raise GraphError(f"duplicate edge {{{u},{v}}}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), label)


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for v in range(n) for u in range(v)], f"K{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return build_graph(n, [(u, (u + 1) % n) for u in range(n)], f"C{n}")


def path_graph(n: int) -> Graph:
    return build_graph(n, [(u, u + 1) for u in range(n - 1)], f"P{n}")


def empty_graph(n: int) -> Graph:
    return build_graph(n, [], f"E{n}")


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return build_graph(a + b, [(u, a + v) for u in range(a) for v in range(b)], f"K{a},{b}")


def disjoint_union(G: Graph, H: Graph) -> Graph:
    shift = G.n
    return build_graph(G.n + H.n, list(G.edges) + [(u + shift, v + shift) for u, v in H.edges])


def neighborhood(G: Graph, u: int) -> frozenset:
    _check_vertex(G, u)
    return frozenset(G.adj[u])


def common_neighbors(G: Graph, u: int, v: int) -> frozenset:
    _check_vertex(G, u)
    _check_vertex(G, v)
    return frozenset(_bits(G.rows[u] & G.rows[v]))


def regular_valency(G: Graph) -> Optional[int]:
    if G.n == 0:
        raise GraphError("empty graph has no valency")
    degs = set(G.degrees)
    return degs.pop() if len(degs) == 1 else None


def components(G: Graph) -> list[frozenset]:
    """Connected components, ordered by least element."""
    seen = 0
    out = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= G.rows[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(frozenset(_bits(comp)))
    return out


def is_connected(G: Graph) -> tuple[bool, list[frozenset]]:
    if G.n == 0:
        raise GraphError("connectivity of the empty graph is undefined here")
    comps = components(G)
    return len(comps) == 1, comps


def bipartition(G: Graph) -> Optional[Bipartition]:
    """BFS 2-colouring; each component's least vertex goes to ``side0``."""
    colour = [-1] * G.n
    for s in range(G.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in G.adj[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return Bipartition(frozenset(u for u in range(G.n) if colour[u] == 0),
                       frozenset(u for u in range(G.n) if colour[u] == 1))


def is_bipartite(G: Graph) -> bool:
    return bipartition(G) is not None


def is_r_thin(G: Graph) -> tuple[bool, Optional[tuple[int, int]]]:
    """R-thin means no two distinct vertices share a neighbourhood.

    Returns ``(True, None)`` or ``(False, (u, v))`` with the lexicographically
    smallest twin pair.
    """
    first: dict[int, int] = {}
    best = None
    for v, row in enumerate(G.rows):
        if row in first:
            pair = (first[row], v)
            if best is None or pair < best:
                best = pair
        else:
            first[row] = v
    return (best is None), best


def twin_classes(G: Graph) -> list[list[int]]:
    """Classes of vertices with identical neighbourhoods, by least element."""
    groups: dict[int, list[int]] = {}
    for v, row in enumerate(G.rows):
        groups.setdefault(row, []).append(v)
    return sorted(groups.values())


def quotient_graph(G: Graph, blocks: Sequence[Iterable[int]]) -> Graph:
    """Quotient by a vertex partition; blocks are ordered by least element.

    An edge inside a block does not produce a loop.
    """
    blocks = [sorted(b) for b in blocks]
    if any(not b for b in blocks):
        raise GraphError("empty block")
    owner = [-1] * G.n
    for b in blocks:
        for v in b:
            _check_vertex(G, v)
            if owner[v] >= 0:
                raise GraphError(f"vertex {v} lies in two blocks")
            owner[v] = 0
    if -1 in owner:
        raise GraphError(f"vertex {owner.index(-1)} is in no block")
    blocks.sort(key=lambda b: b[0])
    for k, b in enumerate(blocks):
        for v in b:
            owner[v] = k
    edges = {(min(owner[u], owner[v]), max(owner[u], owner[v]))
             for u, v in G.edges if owner[u] != owner[v]}
    return build_graph(len(blocks), sorted(edges))
