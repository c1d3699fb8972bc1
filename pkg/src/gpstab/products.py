"""Direct products, Boolean squares and coprimality of graphs.

Product vertices are indexed ``(u, i) -> u * n_sigma + i`` everywhere in the
package; the fibre ``V(G) x {i}`` is the residue class ``i`` mod ``n_sigma``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .graph_core import Graph, GraphError, regular_valency


@dataclass(frozen=True)
class DirectProduct:
    product: Graph
    n_gamma: int
    n_sigma: int
    gamma: Optional[Graph] = field(default=None, compare=False, repr=False)
    sigma: Optional[Graph] = field(default=None, compare=False, repr=False)

    def index(self, u: int, i: int) -> int:
        return u * self.n_sigma + i

    def pi_gamma(self, x: int) -> int:
        return x // self.n_sigma

    def pi_sigma(self, x: int) -> int:
        return x % self.n_sigma

    def pair(self, x: int) -> tuple[int, int]:
        return divmod(x, self.n_sigma)

    def fibers(self) -> list[list[int]]:
        """``fibers()[i]`` lists ``V(G) x {i}``."""
        return [[self.index(u, i) for u in range(self.n_gamma)] for i in range(self.n_sigma)]


def direct_product(G: Graph, H: Graph) -> DirectProduct:
    if G.n == 0 or H.n == 0:
        raise GraphError("direct product needs nonempty factors")
    ns = H.n
    rows = []
    for u in range(G.n):
        for i in range(ns):
            hrow = H.rows[i]
            row = 0
            for v in G.adj[u]:
                row |= hrow << (v * ns)
            rows.append(row)
    label = f"{G.label}x{H.label}" if G.label and H.label else ""
    return DirectProduct(Graph(G.n * ns, tuple(rows), label), G.n, ns, G, H)


def boolean_square(G: Graph) -> Graph:
    """Join distinct vertices that have a common neighbour."""
    rows = []
    for u in range(G.n):
        row = 0
        for w in G.adj[u]:
            row |= G.rows[w]
        rows.append(row & ~(1 << u))
    return Graph(G.n, tuple(rows))


def valency_coprime(G: Graph, H: Graph) -> bool:
    kg, kh = regular_valency(G), regular_valency(H)
    if kg is None or kh is None:
        raise GraphError("valency test needs two regular graphs")
    return math.gcd(kg, kh) == 1


class Coprimality(enum.Enum):
    COPRIME = "Coprime"
    COMMON_FACTOR = "CommonFactor"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CoprimeVerdict:
    kind: Coprimality
    # (Delta, Lambda1, Lambda2) with G ~ Delta x Lambda1 and H ~ Delta x Lambda2
    factor: Optional[tuple] = None
    note: str = ""


MAX_CANDIDATE_ORDER = 8


def _cofactor(G: Graph, delta: Graph) -> Optional[Graph]:
    from .enumeration import enumerate_graphs
    from .perm_groups import is_isomorphic

    m = G.n // delta.n
    for lam in enumerate_graphs(m):
        if 2 * delta.num_edges * lam.num_edges != G.num_edges:
            continue
        if is_isomorphic(direct_product(delta, lam).product, G) is not None:
            return lam
    return None


def coprime_oracle(G: Graph, H: Graph, max_factor_order: int = 4) -> CoprimeVerdict:
    """Brute-force search for a common direct-product factor.

    Candidate factors Delta of every order d (2 <= d <= max_factor_order,
    d dividing both orders) are enumerated, disconnected ones included,
    together with all cofactors of the matching order. Any divisor that
    cannot be searched makes a negative answer Inconclusive.
    """
    from .enumeration import enumerate_graphs

    if max_factor_order < 2:
        raise ValueError("max_factor_order must be at least 2")
    if G.n < 2 or H.n < 2:
        raise GraphError("coprimality needs graphs of order >= 2")
    g = math.gcd(G.n, H.n)
    if g == 1:
        return CoprimeVerdict(Coprimality.COPRIME, note="orders coprime")
    skipped = []
    for d in range(2, g + 1):
        if g % d:
            continue
        if d > max_factor_order or max(d, G.n // d, H.n // d) > MAX_CANDIDATE_ORDER:
            skipped.append(d)
            continue
        for delta in enumerate_graphs(d):
            lam1 = _cofactor(G, delta)
            if lam1 is None:
                continue
            lam2 = _cofactor(H, delta)
            if lam2 is not None:
                return CoprimeVerdict(Coprimality.COMMON_FACTOR, (delta, lam1, lam2))
    if skipped:
        return CoprimeVerdict(Coprimality.INCONCLUSIVE,
                              note=f"factor orders {skipped} beyond search bounds")
    return CoprimeVerdict(Coprimality.COPRIME, note="exhaustive factor search")


def coprimality(G: Graph, H: Graph, max_factor_order: int = 4) -> CoprimeVerdict:
    """Regular graphs with coprime valencies are coprime; otherwise search."""
    kg, kh = regular_valency(G), regular_valency(H)
    if kg is not None and kh is not None and math.gcd(kg, kh) == 1:
        return CoprimeVerdict(Coprimality.COPRIME, note="coprime valencies")
    return coprime_oracle(G, H, max_factor_order)
