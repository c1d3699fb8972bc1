"""Permutations, automorphism groups and isomorphism testing.

Permutations are plain tuples of images, ``p[x]`` being the image of ``x``.
Products follow the right-action convention: ``compose(p, q)`` applies ``p``
first, then ``q``.

Automorphism groups are found by individualization-refinement backtracking.
The search walks a stabilizer chain along a base, testing every candidate
image of each base point once (orbit pruning), so the group order comes out
as a product of orbit lengths without enumerating elements. Explicit element
lists are produced on demand from the chain's transversals and are capped.
"""
from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .graph_core import Graph, GraphError

Perm = tuple

DEFAULT_CAP = 20000


class CapExceeded(RuntimeError):
    """A group (or pair set) is larger than the configured element cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} elements exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


def default_cap() -> int:
    """Element cap; the ``GPS_MAX_AUT`` environment variable overrides it."""
    raw = os.environ.get("GPS_MAX_AUT")
    return int(raw) if raw else DEFAULT_CAP


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` then ``q``."""
    return tuple([q[x] for x in p])


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """``from_cycles(6, (0, 2))`` is the transposition swapping 0 and 2."""
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    if not is_permutation(img):
        raise ValueError(f"cycles {cycles} do not define a permutation")
    return tuple(img)


def cycle_string(p: Perm) -> str:
    seen = set()
    parts = []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        cyc = [s]
        seen.add(s)
        x = p[s]
        while x != s:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def orbits_of(n: int, gens: Sequence[Perm]) -> list[frozenset]:
    """Orbits of the group generated by ``gens``, ordered by least element."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, set] = {}
    for x in range(n):
        groups.setdefault(find(x), set()).add(x)
    return [frozenset(groups[r]) for r in sorted(groups)]


@dataclass(frozen=True)
class GroupElements:
    """Explicitly enumerated permutation group, elements sorted."""
    degree: int
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._members

    def orbits(self) -> list[frozenset]:
        return orbits_of(self.degree, self.elements)

    def is_closed(self) -> bool:
        members = self._members
        if identity(self.degree) not in members:
            return False
        return all(inverse(p) in members for p in self.elements) and all(
            compose(p, q) in members for p in self.elements for q in self.elements)


# ---------------------------------------------------------------------------
# Relational structures: several symmetric relations plus a vertex colouring.


class Structure:
    """Vertices 0..n-1 carrying symmetric relations and a colouring.

    A graph is a structure with one relation. Extra relations and colours
    let the same search compute fibre stabilizers of a product graph.
    """

    def __init__(self, n: int, relations: Sequence[Sequence[int]], colours: Optional[Sequence[int]] = None):
        self.n = n
        self.rows = [tuple(r) for r in relations]
        self.adjs = [tuple(tuple(_bit_list(x)) for x in r) for r in self.rows]
        self.colours = tuple(colours) if colours is not None else (0,) * n

    @classmethod
    def of_graph(cls, G: Graph, colours=None) -> "Structure":
        return cls(G.n, [G.rows], colours)

    def initial_cells(self) -> list[tuple]:
        by_colour: dict = {}
        for v, c in enumerate(self.colours):
            by_colour.setdefault(c, []).append(v)
        return [tuple(by_colour[c]) for c in sorted(by_colour)]


def _bit_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _refine(adjs, cells, n):
    """Equitable refinement; returns the new ordered partition and a trace.

    Sub-cells are ordered by an isomorphism-invariant key, so two partitions
    related by an isomorphism refine to partitions related cell-by-cell, with
    equal traces.
    """
    trace = []
    cells = list(cells)
    cell_of = [0] * n
    while True:
        for ci, c in enumerate(cells):
            for v in c:
                cell_of[v] = ci
        new_cells = []
        split = False
        for ci, c in enumerate(cells):
            if len(c) == 1:
                new_cells.append(c)
                continue
            keyed: dict = {}
            for v in c:
                key = tuple(tuple(sorted([cell_of[w] for w in adj[v]])) for adj in adjs)
                keyed.setdefault(key, []).append(v)
            keys = sorted(keyed)
            trace.append((ci, tuple((k, len(keyed[k])) for k in keys)))
            if len(keys) > 1:
                split = True
                new_cells.extend(tuple(keyed[k]) for k in keys)
            else:
                new_cells.append(c)
        cells = new_cells
        if not split:
            return cells, trace
        trace.append(len(cells))


def _individualize(cells, k, v):
    c = cells[k]
    return cells[:k] + [(v,), tuple(x for x in c if x != v)] + cells[k + 1:]


def _target_cell(cells) -> Optional[int]:
    best = None
    for k, c in enumerate(cells):
        if len(c) > 1 and (best is None or len(c) < len(cells[best])):
            best = k
    return best


def _maps_onto(left: Structure, right: Structure, mapping) -> bool:
    if any(left.colours[v] != right.colours[mapping[v]] for v in range(left.n)):
        return False
    for adj, rrows in zip(left.adjs, right.rows):
        for u in range(left.n):
            img = 0
            for w in adj[u]:
                img |= 1 << mapping[w]
            if img != rrows[mapping[u]]:
                return False
    return True


def _extend(left: Structure, right: Structure, L, R) -> Optional[Perm]:
    """Find an isomorphism carrying each cell of L onto the matching cell of R."""
    k = _target_cell(L)
    if k is None:
        mapping = [0] * left.n
        for cl, cr in zip(L, R):
            mapping[cl[0]] = cr[0]
        return tuple(mapping) if _maps_onto(left, right, mapping) else None
    v = L[k][0]
    L2, tL = _refine(left.adjs, _individualize(L, k, v), left.n)
    cands = list(R[k])
    if v in cands:
        cands.remove(v)
        cands.insert(0, v)
    for w in cands:
        R2, tR = _refine(right.adjs, _individualize(R, k, w), right.n)
        if tR != tL:
            continue
        found = _extend(left, right, L2, R2)
        if found is not None:
            return found
    return None


@dataclass
class AutomorphismChain:
    """Stabilizer chain of a structure's automorphism group.

    ``transversals[k]`` maps each point of the orbit of ``base[k]`` under the
    pointwise stabilizer of ``base[:k]`` to a group element carrying
    ``base[k]`` there.
    """
    n: int
    base: list
    transversals: list
    generators: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def orbits(self) -> list[frozenset]:
        return orbits_of(self.n, self.generators)

    def iter_elements(self) -> Iterator[Perm]:
        cur = [identity(self.n)]
        for t in reversed(self.transversals):
            reps = list(t.values())
            cur = [compose(h, r) for h in cur for r in reps]
        return iter(cur)

    def random_element(self, rng: random.Random) -> Perm:
        g = identity(self.n)
        for t in reversed(self.transversals):
            reps = list(t.values())
            g = compose(g, reps[rng.randrange(len(reps))])
        return g

    def group(self, cap: Optional[int] = None, what: str = "automorphism group") -> GroupElements:
        cap = default_cap() if cap is None else cap
        if self.order > cap:
            raise CapExceeded(what, self.order, cap)
        return GroupElements(self.n, tuple(sorted(self.iter_elements())))


def _transversal(b, gens, n):
    rep = {b: identity(n)}
    queue = [b]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in rep:
                rep[y] = compose(rep[x], g)
                queue.append(y)
    return rep


def _orbit(x, gens) -> set:
    seen = {x}
    queue = [x]
    for y in queue:
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def structure_chain(S: Structure) -> AutomorphismChain:
    n = S.n
    if n == 0:
        return AutomorphismChain(0, [], [], [])
    P, _ = _refine(S.adjs, S.initial_cells(), n)
    partitions = [P]
    traces = []
    base, cell_index = [], []
    while (k := _target_cell(P)) is not None:
        v = P[k][0]
        base.append(v)
        cell_index.append(k)
        P, t = _refine(S.adjs, _individualize(P, k, v), n)
        partitions.append(P)
        traces.append(t)

    gens: list = []
    transversals = [None] * len(base)
    for lvl in reversed(range(len(base))):
        prev, k, b = partitions[lvl], cell_index[lvl], base[lvl]
        orbit = _orbit(b, gens)
        failed: set = set()
        for w in prev[k]:
            if w in orbit or w in failed:
                continue
            R, tR = _refine(S.adjs, _individualize(prev, k, w), n)
            g = _extend(S, S, partitions[lvl + 1], R) if tR == traces[lvl] else None
            if g is None:
                failed |= _orbit(w, gens)
            else:
                gens.append(g)
                orbit = _orbit(b, gens)
        transversals[lvl] = _transversal(b, gens, n)
    return AutomorphismChain(n, base, transversals, gens)


def automorphism_chain(G: Graph) -> AutomorphismChain:
    return structure_chain(Structure.of_graph(G))


def automorphism_order(G: Graph) -> int:
    return automorphism_chain(G).order


def automorphisms(G: Graph, cap: Optional[int] = None) -> GroupElements:
    """All automorphisms of G as a sorted element list; raises CapExceeded."""
    if G.n < 1:
        raise GraphError("automorphisms need at least one vertex")
    return automorphism_chain(G).group(cap)


def automorphisms_bruteforce(G: Graph) -> GroupElements:
    """Oracle: test every one of the n! permutations (n <= 8)."""
    if G.n > 8:
        raise GraphError("brute force limited to n <= 8")
    edges = G.edges
    rows = G.rows
    found = [p for p in itertools.permutations(range(G.n))
             if all(rows[p[u]] >> p[v] & 1 for u, v in edges)]
    return GroupElements(G.n, tuple(found))


def is_automorphism(G: Graph, p: Perm) -> bool:
    return len(p) == G.n and is_permutation(p) and _maps_onto(
        Structure.of_graph(G), Structure.of_graph(G), p)


def _joint_colours(G: Graph, H: Graph):
    n = G.n
    rows = list(G.rows) + [r << n for r in H.rows]
    cells, _ = _refine([tuple(tuple(_bit_list(r)) for r in rows)], [tuple(range(2 * n))], 2 * n)
    colour = [0] * (2 * n)
    for ci, c in enumerate(cells):
        for v in c:
            colour[v] = ci
    return colour[:n], colour[n:]


def is_isomorphic(G: Graph, H: Graph) -> Optional[Perm]:
    """Lexicographically least isomorphism ``G -> H`` or None."""
    if G.n != H.n or G.num_edges != H.num_edges or sorted(G.degrees) != sorted(H.degrees):
        return None
    n = G.n
    if n == 0:
        return ()
    SG, SH = Structure.of_graph(G), Structure.of_graph(H)
    L, tL = _refine(SG.adjs, [tuple(range(n))], n)
    R, tR = _refine(SH.adjs, [tuple(range(n))], n)
    if tL != tR or _extend(SG, SH, L, R) is None:
        return None

    cg, ch = _joint_colours(G, H)
    mapping = [-1] * n
    used = [False] * n

    def place(u):
        if u == n:
            return True
        row = G.rows[u]
        for a in range(n):
            if used[a] or ch[a] != cg[u]:
                continue
            hrow = H.rows[a]
            if any((row >> x & 1) != (hrow >> mapping[x] & 1) for x in range(u)):
                continue
            mapping[u] = a
            used[a] = True
            if place(u + 1):
                return True
            used[a] = False
        mapping[u] = -1
        return False

    return tuple(mapping) if place(0) else None


def is_vertex_transitive(G: Graph) -> bool:
    if G.n < 1:
        raise GraphError("vertex-transitivity needs at least one vertex")
    return len(automorphism_chain(G).orbits()) == 1


def isomorphism_exists(G: Graph, H: Graph) -> bool:
    """Existence only; cheaper than :func:`is_isomorphic`."""
    if G.n != H.n or G.num_edges != H.num_edges:
        return False
    if G.n == 0:
        return True
    SG, SH = Structure.of_graph(G), Structure.of_graph(H)
    L, tL = _refine(SG.adjs, [tuple(range(G.n))], G.n)
    R, tR = _refine(SH.adjs, [tuple(range(H.n))], H.n)
    return tL == tR and _extend(SG, SH, L, R) is not None


def refinement_certificate(G: Graph) -> tuple:
    """Isomorphism invariant: the trace of colour refinement from one cell."""
    S = Structure.of_graph(G)
    _, trace = _refine(S.adjs, [tuple(range(G.n))], G.n)
    return (G.n, G.num_edges, tuple(trace))
