"""Two-fold automorphisms and Sigma-automorphisms of a graph.

A tuple ``t`` of permutations of V(G), indexed by V(S), is a
Sigma-automorphism when every S-edge ``{i, j}`` makes ``(t[i], t[j])`` a
two-fold automorphism of G, i.e. ``u ~ v  <=>  t[i][u] ~ t[j][v]``.

The group Aut_S(G) is searched as a constraint problem whose constraint
graph is S itself: every coordinate draws from the first coordinates of
G's two-fold pairs and neighbouring coordinates must form a two-fold pair.
Nothing here looks at the product graph, so Aut_S(G) computed this way is
an independent check on fibre stabilizers computed from G x S.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .graph_core import Graph, GraphError, components, is_r_thin, twin_classes
from .perm_groups import CapExceeded, Perm, compose, default_cap, identity, inverse


@dataclass(frozen=True)
class TwoFoldPair:
    alpha: Perm
    beta: Perm

    @property
    def nontrivial(self) -> bool:
        return self.alpha != self.beta


@dataclass(frozen=True)
class SigmaAutomorphism:
    perms: tuple

    @property
    def nondiagonal(self) -> bool:
        return any(p != self.perms[0] for p in self.perms)

    def __len__(self):
        return len(self.perms)

    def __getitem__(self, i):
        return self.perms[i]

    def compose(self, other: "SigmaAutomorphism") -> "SigmaAutomorphism":
        return SigmaAutomorphism(tuple(compose(a, b) for a, b in zip(self.perms, other.perms)))

    def inverse(self) -> "SigmaAutomorphism":
        return SigmaAutomorphism(tuple(inverse(a) for a in self.perms))


@dataclass(frozen=True)
class SigmaAutGroup:
    n_gamma: int
    n_sigma: int
    elements: tuple  # of SigmaAutomorphism, sorted

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def nondiagonal(self) -> list:
        return [t for t in self.elements if t.nondiagonal]


def _is_two_fold(G: Graph, alpha: Perm, beta: Perm) -> bool:
    # u ~ v  <=>  alpha(u) ~ beta(v), for every ordered pair
    rows = G.rows
    for v in range(G.n):
        img = 0
        for u in G.adj[v]:
            img |= 1 << alpha[u]
        if img != rows[beta[v]]:
            return False
    return True


def two_fold_partner(G: Graph, alpha: Perm) -> Optional[Perm]:
    """The unique beta making (alpha, beta) two-fold, for R-thin G.

    beta must send v to the vertex whose neighbourhood is alpha(N(v)).
    """
    thin, twins = is_r_thin(G)
    if not thin:
        raise GraphError(f"graph is not R-thin (N({twins[0]}) = N({twins[1]})); use two_fold_pairs")
    owner = {row: v for v, row in enumerate(G.rows)}
    beta = []
    for v in range(G.n):
        img = 0
        for u in G.adj[v]:
            img |= 1 << alpha[u]
        w = owner.get(img)
        if w is None:
            return None
        beta.append(w)
    if len(set(beta)) != G.n:
        return None
    return tuple(beta)


def iter_two_fold_pairs(G: Graph) -> Iterator[TwoFoldPair]:
    """Paired backtracking over (alpha, beta), in lexicographic order.

    Rows (alpha) and columns (beta) of the adjacency matrix are assigned
    alternately; each new assignment is checked against all assigned
    entries of the other kind. Degrees must be preserved by both maps.
    """
    n = G.n
    rows, deg = G.rows, G.degrees
    alpha = [-1] * n
    beta = [-1] * n
    used_a = [False] * n
    used_b = [False] * n
    order = []
    for x in range(n):
        order.append((0, x))
        order.append((1, x))

    def consistent(kind, x, a):
        if kind == 0:
            for v in range(x + 1):
                b = beta[v]
                if b >= 0 and (rows[x] >> v & 1) != (rows[a] >> b & 1):
                    return False
        else:
            for u in range(x + 1):
                a2 = alpha[u]
                if a2 >= 0 and (rows[u] >> x & 1) != (rows[a2] >> a & 1):
                    return False
        return True

    def walk(pos):
        if pos == len(order):
            yield TwoFoldPair(tuple(alpha), tuple(beta))
            return
        kind, x = order[pos]
        target, used = (alpha, used_a) if kind == 0 else (beta, used_b)
        for a in range(n):
            if used[a] or deg[a] != deg[x]:
                continue
            target[x] = a
            if consistent(kind, x, a):
                used[a] = True
                yield from walk(pos + 1)
                used[a] = False
            target[x] = -1

    yield from walk(0)


def two_fold_pairs(G: Graph, cap: Optional[int] = None) -> list[TwoFoldPair]:
    cap = default_cap() if cap is None else cap
    out = []
    for pair in iter_two_fold_pairs(G):
        out.append(pair)
        if len(out) > cap:
            raise CapExceeded("two-fold pairs", len(out), cap)
    out.sort(key=lambda p: (p.alpha, p.beta))
    return out


def two_fold_pairs_via_partner(G: Graph) -> list[TwoFoldPair]:
    """R-thin graphs only: run alpha over all automorphism-candidate
    permutations and keep those with a partner."""
    import itertools
    out = []
    for alpha in itertools.permutations(range(G.n)):
        beta = two_fold_partner(G, alpha)
        if beta is not None:
            out.append(TwoFoldPair(alpha, beta))
    return out


def is_sigma_automorphism(G: Graph, S: Graph, t: Sequence[Perm]) -> bool:
    if len(t) != S.n:
        raise ValueError(f"tuple has {len(t)} entries, Sigma has {S.n} vertices")
    return all(_is_two_fold(G, tuple(t[i]), tuple(t[j])) and _is_two_fold(G, tuple(t[j]), tuple(t[i]))
               for i, j in S.edges)


def _check_sigma(S: Graph) -> None:
    if S.n < 2:
        raise GraphError("Sigma needs at least two vertices")
    isolated = [i for i in range(S.n) if S.degrees[i] == 0]
    if isolated:
        raise GraphError(f"Sigma has isolated vertices {isolated}; the group would be unbounded at them")


def _sigma_order(S: Graph) -> list[int]:
    """Vertices of S in BFS order, component by component."""
    out = []
    for comp in components(S):
        root = min(comp)
        seen = {root}
        queue = [root]
        for x in queue:
            out.append(x)
            for y in S.adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return out


def _partner_map(pairs) -> dict:
    partners: dict = {}
    for p in pairs:
        partners.setdefault(p.alpha, set()).add(p.beta)
    return partners


def _iter_csp(S: Graph, partners: dict, roots_first: Sequence = ()) -> Iterator[tuple]:
    order = _sigma_order(S)
    domain = sorted(partners)
    if roots_first:
        preferred = [a for a in roots_first if a in partners]
        seen = set(preferred)
        domain = preferred + [a for a in domain if a not in seen]
    value: dict = {}

    def walk(pos):
        if pos == len(order):
            yield tuple(value[i] for i in range(S.n))
            return
        i = order[pos]
        assigned = [value[j] for j in S.adj[i] if j in value]
        if assigned:
            cands = set.intersection(*(partners[a] for a in assigned))
            cands = sorted(cands)
        else:
            cands = domain
        for a in cands:
            if a not in partners:
                continue
            value[i] = a
            yield from walk(pos + 1)
            del value[i]

    yield from walk(0)


def sigma_automorphism_group(G: Graph, S: Graph, cap: Optional[int] = None) -> SigmaAutGroup:
    _check_sigma(S)
    cap = default_cap() if cap is None else cap
    partners = _partner_map(two_fold_pairs(G, cap))
    out = []
    for t in _iter_csp(S, partners):
        out.append(SigmaAutomorphism(t))
        if len(out) > cap:
            raise CapExceeded("Sigma-automorphism group", len(out), cap)
    out.sort(key=lambda s: s.perms)
    return SigmaAutGroup(G.n, S.n, tuple(out))


def has_nondiagonal(G: Graph, S: Graph, cap: Optional[int] = None) -> Optional[SigmaAutomorphism]:
    """A nondiagonal Sigma-automorphism of G, or None.

    Twin vertices give a witness directly: swap them in one coordinate and
    leave the others fixed. Otherwise the constraint search runs with
    non-automorphism roots first, so diagonal tuples come last.
    """
    _check_sigma(S)
    for cls in twin_classes(G):
        if len(cls) > 1:
            swap = list(range(G.n))
            swap[cls[0]], swap[cls[1]] = cls[1], cls[0]
            t = (tuple(swap),) + (identity(G.n),) * (S.n - 1)
            if is_sigma_automorphism(G, S, t):
                return SigmaAutomorphism(t)
    cap = default_cap() if cap is None else cap
    pairs = two_fold_pairs(G, cap)
    partners = _partner_map(pairs)
    # (a, a) is two-fold exactly when a is an automorphism
    auts = {p.alpha for p in pairs if not p.nontrivial}
    non_auts = [a for a in sorted(partners) if a not in auts]
    for t in _iter_csp(S, partners, roots_first=non_auts):
        w = SigmaAutomorphism(t)
        if w.nondiagonal:
            return w
    return None
