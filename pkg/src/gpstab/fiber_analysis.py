"""Common-neighbour ratios on G x S and the fibre sets built from them.

For product vertices a = (u, i) and b = (v, j) the ratio ``f(a, b)`` is the
number of shared product neighbours over the degree of a. With regular
factors it splits as ``(|N(u) & N(v)| / val G) * (|N(i) & N(j)| / val S)``.

X(a) collects the b != a with ``val(S) * f(a, b)`` a positive integer, and
Y(a) keeps the members of X(a) whose ratio is maximal within their fibre.
For vertex-transitive S the neighbours of i in the Boolean square B(S) are
layered by common-neighbour count ``n_1 > n_2 > ... > n_t``. That gives the
levels D_k(i) and the layered sets X_k(a), Y_k(a).

:func:`verify_lemma` checks the invariance statements about these sets
against Aut(G x S), either exhaustively or on random elements.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph_core import (Graph, GraphError, components, is_bipartite, is_connected, is_r_thin,
                         regular_valency)
from .perm_groups import CapExceeded, automorphism_chain, default_cap, is_vertex_transitive
from .products import DirectProduct, boolean_square, direct_product
from .stability import p_order

LEMMAS = ("X", "ijneq", "different", "geqn", "Xk", "vs2", "XY", "hom", "add2", "even",
          "GammaBip", "SigmaBip")


class ProfileError(GraphError):
    pass


def _common(G: Graph, a: int, b: int) -> int:
    return bin(G.rows[a] & G.rows[b]).count("1")


def f_value(prod: DirectProduct, a: int, b: int) -> Fraction:
    P = prod.product
    deg = P.degrees[a]
    if deg == 0:
        raise GraphError(f"product vertex {prod.pair(a)} has no neighbours")
    value = Fraction(_common(P, a, b), deg)
    G, S = prod.gamma, prod.sigma
    kg, ks = regular_valency(G), regular_valency(S)
    if kg and ks:
        (u, i), (v, j) = prod.pair(a), prod.pair(b)
        assert value == Fraction(_common(G, u, v), kg) * Fraction(_common(S, i, j), ks)
    return value


@dataclass(frozen=True)
class CommonNeighborProfile:
    center: int
    levels: tuple  # ((n_k, frozenset D_k), ...), n_k strictly decreasing
    d_zero: frozenset
    d_last: frozenset
    valency_identity: bool  # val(S) == sum |D_k|

    @property
    def t(self) -> int:
        return len(self.levels)

    def level_of(self, x: int) -> int:
        if x in self.d_zero:
            return 0
        for k, (_, D) in enumerate(self.levels, start=1):
            if x in D:
                return k
        return self.t + 1


def profile(S: Graph, i: int) -> CommonNeighborProfile:
    if not 0 <= i < S.n:
        raise GraphError(f"vertex {i} out of range for n={S.n}")
    if S.num_edges == 0:
        raise ProfileError("Sigma has no edges")
    if not is_vertex_transitive(S):
        raise ProfileError("Sigma is not vertex-transitive")
    nb = [x for x in range(S.n) if x != i and _common(S, i, x) > 0]
    counts = sorted({_common(S, i, x) for x in nb}, reverse=True)
    if nb and not len(nb) > counts[0]:
        raise ProfileError(f"|N_B(S)({i})| = {len(nb)} does not exceed n_1 = {counts[0]}")
    levels = tuple((c, frozenset(x for x in nb if _common(S, i, x) == c)) for c in counts)
    last = frozenset(x for x in range(S.n) if _common(S, i, x) == 0)
    valency = S.degrees[i]
    return CommonNeighborProfile(i, levels, frozenset({i}), last,
                                 valency == sum(len(D) for _, D in levels))


@dataclass(frozen=True)
class FiberSets:
    base: int
    x: frozenset
    y: frozenset
    xk: Optional[tuple]  # xk[k] = X_k, xk[0] = {base}; None without level sets
    yk: Optional[tuple]


def _standing(G: Graph, S: Graph) -> list[str]:
    """Regular factors, positive coprime valencies."""
    bad = []
    kg, ks = regular_valency(G) if G.n else None, regular_valency(S) if S.n else None
    if kg is None:
        bad.append("gamma not regular")
    if ks is None:
        bad.append("sigma not regular")
    if kg == 0 or ks == 0:
        bad.append("valency zero")
    elif kg is not None and ks is not None and math.gcd(kg, ks) != 1:
        bad.append("valencies not coprime")
    return bad


def fiber_sets(prod: DirectProduct, base: int) -> FiberSets:
    G, S, P = prod.gamma, prod.sigma, prod.product
    bad = _standing(G, S)
    if bad:
        raise GraphError(", ".join(bad))
    ks = regular_valency(S)
    f = {b: f_value(prod, base, b) for b in range(P.n)}
    x = frozenset(b for b in range(P.n) if b != base and f[b] > 0 and (ks * f[b]).denominator == 1)
    fibre_max = {j: max(f[prod.index(w, j)] for w in range(prod.n_gamma)) for j in range(prod.n_sigma)}
    y = frozenset(b for b in x if f[b] >= fibre_max[prod.pi_sigma(b)])
    try:
        prof = profile(S, prod.pi_sigma(base))
    except ProfileError:
        return FiberSets(base, x, y, None, None)
    xk = [frozenset({base})]
    for _, D in prof.levels:
        xk.append(frozenset(b for b in x if prod.pi_sigma(b) in D))
    yk = [frozenset({base})]
    covered = set()
    for k in range(1, prof.t + 2):
        covered |= xk[k - 1]
        rest = [b for b in x if b not in covered]
        top = max((f[b] for b in rest), default=None)
        yk.append(frozenset(b for b in rest if f[b] == top))
    return FiberSets(base, x, y, tuple(xk), tuple(yk))


class _Tables:
    """Integer matrices over product vertices, used by the lemma sweeps."""

    def __init__(self, prod: DirectProduct):
        G, S, P = prod.gamma, prod.sigma, prod.product
        self.prod = prod
        N, ng, ns = P.n, prod.n_gamma, prod.n_sigma
        A = np.zeros((N, N), dtype=np.int64)
        for a, b in P.edges:
            A[a, b] = A[b, a] = 1
        self.common = A @ A
        deg = A.sum(axis=1)
        ks = regular_valency(S)
        idx = np.arange(N)
        self.pg, self.ps = idx // ns, idx % ns
        eye = np.eye(N, dtype=bool)
        self.X = (self.common > 0) & ((ks * self.common) % deg[:, None] == 0) & ~eye
        fibre_max = self.common.reshape(N, ng, ns).max(axis=1)
        self.Y = self.X & (self.common >= fibre_max[:, self.ps])
        AS = np.zeros((ns, ns), dtype=np.int64)
        for i, j in S.edges:
            AS[i, j] = AS[j, i] = 1
        self.common_s = AS @ AS
        self.nb_s = (self.common_s > 0) & ~np.eye(ns, dtype=bool)
        self.level = None

    def add_levels(self, profiles: list[CommonNeighborProfile]) -> None:
        ns = self.prod.n_sigma
        dl = np.array([[p.level_of(j) for j in range(ns)] for p in profiles], dtype=np.int64)
        self.t = profiles[0].t
        self.dl = dl
        lev = np.where(self.X, dl[self.ps[:, None], self.ps[None, :]], -1)
        np.fill_diagonal(lev, 0)
        self.level = lev

    def y_levels(self) -> list[np.ndarray]:
        """Y_k for k = 1..t+1 as boolean matrices."""
        out = []
        for k in range(1, self.t + 2):
            # drop X_1..X_{k-1}; same-fibre members of X have level 0 and stay
            rest = self.X & ~((self.level >= 1) & (self.level < k))
            top = np.where(rest, self.common, -1).max(axis=1)
            out.append(rest & (self.common == top[:, None]))
        return out


@dataclass
class LemmaResult:
    lemma: str
    status: str  # "Pass" | "Fail" | "HypothesesNotMet"
    reasons: tuple = ()
    witness: Optional[dict] = None
    checked: int = 0
    note: str = ""


class LemmaViolation(AssertionError):
    def __init__(self, result: LemmaResult):
        super().__init__(f"lemma {result.lemma} failed: {result.witness}")
        self.result = result


def lemma_hypotheses(name: str, G: Graph, S: Graph) -> list[str]:
    if name not in LEMMAS:
        raise KeyError(f"unknown lemma {name!r}")
    bad = []
    if G.n < 1 or S.n < 2:
        return ["order too small"]
    if name == "X":
        if regular_valency(S) in (None, 0):
            bad.append("sigma not regular with positive valency")
        if min(G.degrees) == 0:
            bad.append("gamma has isolated vertices")
        return bad
    bad += _standing(G, S)
    if name != "different" and not is_r_thin(G)[0]:
        bad.append("gamma not R-thin")
    if name != "ijneq" and not is_r_thin(S)[0]:
        bad.append("sigma not R-thin")
    if name in ("Xk", "XY", "hom", "add2", "even", "GammaBip", "SigmaBip"):
        if not is_vertex_transitive(S):
            bad.append("sigma not vertex-transitive")
    if name in ("GammaBip", "SigmaBip"):
        if not is_connected(G)[0]:
            bad.append("gamma disconnected")
        if not is_connected(S)[0]:
            bad.append("sigma disconnected")
        gb, sb = is_bipartite(G), is_bipartite(S)
        if name == "GammaBip" and not (gb and not sb):
            bad.append("needs gamma bipartite and sigma non-bipartite")
        if name == "SigmaBip" and not (sb and not gb):
            bad.append("needs sigma bipartite and gamma non-bipartite")
    return bad


_NOTES = {"vs2": "hypothesis read as: both factors R-thin"}


def _elements(prod: DirectProduct, samples: Optional[int], seed: int, cap: Optional[int]):
    chain = automorphism_chain(prod.product)
    if samples is None:
        cap = default_cap() if cap is None else cap
        if chain.order > cap:
            raise CapExceeded("automorphism group of the product", chain.order, cap)
        return chain, list(chain.iter_elements())
    rng = random.Random(seed)
    return chain, [chain.random_element(rng) for _ in range(samples)]


def _invariant(M: np.ndarray, elements, chunk: int = 512) -> Optional[tuple]:
    """First (s, a, b) with M[s(a), s(b)] != M[a, b], if any."""
    elements = list(elements)
    for start in range(0, len(elements), chunk):
        block = np.asarray(elements[start:start + chunk])
        moved = M[block[:, :, None], block[:, None, :]]
        bad = np.argwhere(moved != M[None])
        if len(bad):
            e, a, b = (int(x) for x in bad[0])
            return elements[start + e], a, b
    return None


def _run(name: str, T: _Tables, prod: DirectProduct, elements) -> Optional[dict]:
    G, S = prod.gamma, prod.sigma
    ns, ng = prod.n_sigma, prod.n_gamma

    if name == "X":
        hit = _invariant(T.X, elements)
        return hit and {"sigma": hit[0], "base": hit[1], "other": hit[2]}
    if name == "hom":
        hit = _invariant(T.Y, elements)
        return hit and {"sigma": hit[0], "base": hit[1], "other": hit[2]}
    if name == "Xk":
        hit = _invariant(T.level, elements)
        return hit and {"sigma": hit[0], "base": hit[1], "other": hit[2]}
    if name == "ijneq":
        bad = np.argwhere(T.X & (T.ps[:, None] == T.ps[None, :]))
        return {"base": int(bad[0][0]), "other": int(bad[0][1])} if len(bad) else None
    if name == "vs2":
        target = (T.pg[:, None] == T.pg[None, :]) & T.nb_s[T.ps[:, None], T.ps[None, :]]
        bad = np.argwhere(T.Y != target)
        return {"base": int(bad[0][0]), "other": int(bad[0][1])} if len(bad) else None
    if name == "XY":
        for k, Yk in enumerate(T.y_levels(), start=1):
            Xk = T.level == k
            inside = T.Y & (T.dl[T.ps[:, None], T.ps[None, :]] == k)
            bad = np.argwhere((Yk & ~Xk) | (Yk != inside))
            if len(bad):
                return {"k": k, "base": int(bad[0][0]), "other": int(bad[0][1])}
        return None

    bs_edges = boolean_square(S).edges
    if name == "different":
        for s in elements:
            img = np.asarray(s) % ns
            for i, j in bs_edges:
                same = np.flatnonzero(img[np.arange(ng) * ns + i] == img[np.arange(ng) * ns + j])
                if len(same):
                    return {"sigma": s, "u": int(same[0]), "i": i, "j": j}
        return None
    if name == "geqn":
        bg_edges = boolean_square(G).edges
        pairs = [(u * ns + i, v * ns + j, T.common_s[i, j])
                 for e in bg_edges for u, v in (e, e[::-1]) for i, j in bs_edges]
        if not pairs:
            return None
        left, right, need = (np.array(c) for c in zip(*pairs))
        for s in elements:
            img = np.asarray(s) % ns
            got = T.common_s[img[left], img[right]]
            bad = np.flatnonzero(got < need)
            if len(bad):
                k = int(bad[0])
                return {"sigma": s, "pair": (int(left[k]), int(right[k]))}
        return None
    if name == "add2":
        ii, jj = np.nonzero(T.common_s > 0)
        us = np.arange(ng)[:, None]
        left, right = (us * ns + ii).ravel(), (us * ns + jj).ravel()
        for s in elements:
            img = np.asarray(s) // ns
            bad = np.flatnonzero(img[left] != img[right])
            if len(bad):
                k = int(bad[0])
                return {"sigma": s, "pair": (int(left[k]), int(right[k]))}
        return None
    if name == "even":
        comp = np.zeros(ng, dtype=np.int64)
        for c, block in enumerate(components(boolean_square(G))):
            comp[list(block)] = c
        uu, vv = np.nonzero(comp[:, None] == comp[None, :])
        idx = np.arange(ns)
        left = (uu[:, None] * ns + idx).ravel()
        right = (vv[:, None] * ns + idx).ravel()
        for s in elements:
            img = np.asarray(s) % ns
            bad = np.flatnonzero(img[left] != img[right])
            if len(bad):
                k = int(bad[0])
                return {"sigma": s, "pair": (int(left[k]), int(right[k]))}
        return None
    if name in ("GammaBip", "SigmaBip"):
        chain_order = automorphism_chain(prod.product).order
        po = p_order(prod)
        if po != chain_order:
            return {"p_order": po, "aut_order": chain_order}
        for s in elements:
            img = np.asarray(s) % ns
            if np.any(img.reshape(ng, ns) != img[:ns]):
                return {"sigma": s}
        return None
    raise KeyError(name)


def verify_lemma(name: str, G: Graph, S: Graph, samples: Optional[int] = None, seed: int = 0,
                 cap: Optional[int] = None, raise_on_fail: bool = True,
                 elements: Optional[list] = None) -> LemmaResult:
    """Check one lemma on (G, S) over all of Aut(G x S), or over
    ``samples`` random elements, or over the given ``elements``.

    A failure raises :class:`LemmaViolation` unless ``raise_on_fail`` is off.
    """
    bad = lemma_hypotheses(name, G, S)
    note = _NOTES.get(name, "")
    if bad:
        return LemmaResult(name, "HypothesesNotMet", tuple(bad), note=note)
    prod = direct_product(G, S)
    T = _Tables(prod)
    if name in ("Xk", "XY"):
        try:
            T.add_levels([profile(S, i) for i in range(S.n)])
        except ProfileError as exc:
            return LemmaResult(name, "HypothesesNotMet", (f"profile: {exc}",), note=note)
    if elements is None:
        _, elements = _elements(prod, samples, seed, cap)
    witness = _run(name, T, prod, elements)
    result = LemmaResult(name, "Fail" if witness else "Pass", (), witness, len(elements), note)
    if witness and raise_on_fail:
        raise LemmaViolation(result)
    return result
