"""Stability of graph pairs, the fibre subgroups Q and P, and executable
forms of the two main theorems.

A pair (G, S) is stable when Aut(G x S) is no larger than Aut(G) x Aut(S).
The product action ``(u, i) -> (alpha(u), beta(i))`` embeds Aut(G) x Aut(S)
injectively, so stability is decided by comparing group orders.

Q is the subgroup of Aut(G x S) fixing every fibre ``V(G) x {i}`` setwise,
P the subgroup permuting the fibres among themselves. Their orders come from
the automorphism search run on the product with the fibres as vertex colours
(Q) or as an extra relation (P), so neither needs Aut(G x S) enumerated.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .graph_core import Graph, GraphError, is_bipartite, is_connected, is_r_thin, regular_valency
from .perm_groups import (CapExceeded, GroupElements, Perm, Structure, automorphism_chain,
                          default_cap, is_vertex_transitive, structure_chain)
from .products import Coprimality, CoprimeVerdict, DirectProduct, coprimality, direct_product
from .sigma_auto import SigmaAutomorphism, has_nondiagonal


class Classification(enum.Enum):
    STABLE = "Stable"
    TRIVIALLY_UNSTABLE = "TriviallyUnstable"
    NONTRIVIALLY_UNSTABLE = "NontriviallyUnstable"


@dataclass
class StabilityReport:
    aut_gamma_order: int
    aut_sigma_order: int
    aut_product_order: int
    q_order: int
    p_order: int
    stable: bool
    classification: Optional[Classification] = None
    reasons: tuple = ()
    witness: Optional[SigmaAutomorphism] = None
    coprime: Optional[CoprimeVerdict] = None

    def __post_init__(self):
        base = self.aut_gamma_order * self.aut_sigma_order
        assert self.aut_product_order >= base
        assert self.stable == (self.aut_product_order == base)
        assert self.p_order % self.q_order == 0
        assert self.aut_product_order % self.p_order == 0


def fiber_colours(prod: DirectProduct) -> list[int]:
    return [prod.pi_sigma(x) for x in range(prod.product.n)]


def fiber_relation(prod: DirectProduct) -> list[int]:
    """Rows of the 'same fibre, distinct vertex' relation."""
    rows = []
    for x in range(prod.product.n):
        i = prod.pi_sigma(x)
        mask = sum(1 << prod.index(v, i) for v in range(prod.n_gamma))
        rows.append(mask & ~(1 << x))
    return rows


def _check_degree(prod: DirectProduct, aut_product: GroupElements) -> None:
    if aut_product.degree != prod.product.n:
        raise GraphError(f"group degree {aut_product.degree} does not match product order {prod.product.n}")


def q_subgroup(G: Graph, S: Graph, aut_product: GroupElements) -> GroupElements:
    prod = direct_product(G, S)
    _check_degree(prod, aut_product)
    ns = S.n
    keep = [s for s in aut_product if all(s[x] % ns == x % ns for x in range(prod.product.n))]
    return GroupElements(aut_product.degree, tuple(keep))


def _permutes_fibers(s, prod: DirectProduct) -> bool:
    ns = prod.n_sigma
    for i in range(ns):
        target = s[i] % ns
        for u in range(1, prod.n_gamma):
            if s[u * ns + i] % ns != target:
                return False
    return True


def p_subgroup(G: Graph, S: Graph, aut_product: GroupElements) -> GroupElements:
    prod = direct_product(G, S)
    _check_degree(prod, aut_product)
    keep = [s for s in aut_product if _permutes_fibers(s, prod)]
    return GroupElements(aut_product.degree, tuple(keep))


def q_order(prod: DirectProduct) -> int:
    return structure_chain(Structure(prod.product.n, [prod.product.rows], fiber_colours(prod))).order


def p_order(prod: DirectProduct) -> int:
    return structure_chain(Structure(prod.product.n, [prod.product.rows, fiber_relation(prod)])).order


def product_action(prod: DirectProduct, alpha: Perm, beta: Perm) -> Perm:
    """``(u, i) -> (alpha(u), beta(i))``."""
    return tuple(prod.index(alpha[u], beta[i]) for u in range(prod.n_gamma) for i in range(prod.n_sigma))


def sigma_to_product(prod: DirectProduct, t: SigmaAutomorphism) -> Perm:
    """``(u, i) -> (t_i(u), i)``: the element of Q matching ``t``."""
    return tuple(prod.index(t[i][u], i) for u in range(prod.n_gamma) for i in range(prod.n_sigma))


def product_to_sigma(prod: DirectProduct, s: Perm) -> SigmaAutomorphism:
    """Inverse of :func:`sigma_to_product` on Q."""
    return SigmaAutomorphism(tuple(
        tuple(prod.pi_gamma(s[prod.index(u, i)]) for u in range(prod.n_gamma))
        for i in range(prod.n_sigma)))


def is_stable(G: Graph, S: Graph) -> StabilityReport:
    if G.n < 2 or S.n < 2:
        raise GraphError("stability is defined here for graphs of order >= 2")
    prod = direct_product(G, S)
    ag = automorphism_chain(G).order
    as_ = automorphism_chain(S).order
    ap = automorphism_chain(prod.product).order
    return StabilityReport(ag, as_, ap, q_order(prod), p_order(prod), stable=(ap == ag * as_))


def classify_pair(G: Graph, S: Graph, max_factor_order: int = 4, cap: Optional[int] = None,
                  find_witness: bool = True) -> StabilityReport:
    report = is_stable(G, S)
    report.coprime = coprimality(G, S, max_factor_order)
    if report.stable:
        report.classification = Classification.STABLE
        return report
    reasons = []
    if not is_connected(G)[0]:
        reasons.append("gamma disconnected")
    if not is_connected(S)[0]:
        reasons.append("sigma disconnected")
    if not is_r_thin(G)[0]:
        reasons.append("gamma not R-thin")
    if not is_r_thin(S)[0]:
        reasons.append("sigma not R-thin")
    if report.coprime.kind is Coprimality.COMMON_FACTOR:
        reasons.append("not coprime")
    elif report.coprime.kind is Coprimality.INCONCLUSIVE:
        reasons.append("coprimality inconclusive")
    if is_bipartite(G) and is_bipartite(S):
        reasons.append("both bipartite")
    report.reasons = tuple(reasons)
    report.classification = (Classification.TRIVIALLY_UNSTABLE if reasons
                             else Classification.NONTRIVIALLY_UNSTABLE)
    if find_witness and min(S.degrees) > 0:
        try:
            report.witness = has_nondiagonal(G, S, cap)
        except CapExceeded:
            report.witness = None
    return report


@dataclass
class Theorem1Check:
    verdict: str  # "pass" | "fail" | "unchecked"
    applicable: bool
    failed: tuple = ()
    unchecked: tuple = ()


def check_theorem1(G: Graph, S: Graph, report: Optional[StabilityReport] = None) -> Theorem1Check:
    """Stable pairs must be coprime and R-thin; with both automorphism
    groups nontrivial they must also be connected with a non-bipartite
    factor."""
    report = report or classify_pair(G, S, find_witness=False)
    if not report.stable:
        return Theorem1Check("pass", applicable=False)
    failed, unchecked = [], []
    verdict = report.coprime or coprimality(G, S)
    if verdict.kind is Coprimality.COMMON_FACTOR:
        failed.append("coprime")
    elif verdict.kind is Coprimality.INCONCLUSIVE:
        unchecked.append("coprime")
    if not is_r_thin(G)[0]:
        failed.append("gamma R-thin")
    if not is_r_thin(S)[0]:
        failed.append("sigma R-thin")
    if report.aut_gamma_order > 1 and report.aut_sigma_order > 1:
        if not is_connected(G)[0]:
            failed.append("gamma connected")
        if not is_connected(S)[0]:
            failed.append("sigma connected")
        if is_bipartite(G) and is_bipartite(S):
            failed.append("non-bipartite factor")
    if failed:
        return Theorem1Check("fail", True, tuple(failed), tuple(unchecked))
    return Theorem1Check("unchecked" if unchecked else "pass", True, (), tuple(unchecked))


@dataclass
class Theorem2Check:
    verdict: str  # "pass" | "fail" | "not-applicable"
    reason: str = ""
    nontrivially_unstable: Optional[bool] = None
    witness: Optional[SigmaAutomorphism] = None
    report: Optional[StabilityReport] = field(default=None, repr=False)


def theorem2_hypotheses(G: Graph, S: Graph) -> list[str]:
    """Violated hypotheses, empty when the theorem applies."""
    bad = []
    if G.n < 2 or S.n < 2:
        return ["order below 2"]
    if not is_connected(G)[0]:
        bad.append("gamma disconnected")
    kg = regular_valency(G)
    if kg is None:
        bad.append("gamma not regular")
    if not is_connected(S)[0]:
        bad.append("sigma disconnected")
    if not is_vertex_transitive(S):
        bad.append("sigma not vertex-transitive")
    ks = regular_valency(S)
    if kg is not None and ks is not None and math.gcd(kg, ks) != 1:
        bad.append("valencies not coprime")
    if not is_r_thin(G)[0]:
        bad.append("gamma not R-thin")
    if not is_r_thin(S)[0]:
        bad.append("sigma not R-thin")
    if is_bipartite(G) and is_bipartite(S):
        bad.append("both bipartite")
    return bad


def check_theorem2(G: Graph, S: Graph, cap: Optional[int] = None,
                   report: Optional[StabilityReport] = None) -> Theorem2Check:
    """Under the hypotheses: nontrivially unstable <=> a nondiagonal
    Sigma-automorphism exists."""
    bad = theorem2_hypotheses(G, S)
    if bad:
        return Theorem2Check("not-applicable", ", ".join(bad))
    report = report or classify_pair(G, S, find_witness=False)
    ntu = report.classification is Classification.NONTRIVIALLY_UNSTABLE
    witness = has_nondiagonal(G, S, cap)
    ok = ntu == (witness is not None)
    return Theorem2Check("pass" if ok else "fail",
                         "" if ok else f"classification {report.classification.value}, witness {witness}",
                         ntu, witness, report)
