"""Stability census over all small graphs against a set of Sigma graphs.

Records come out in a fixed order: Gamma by order then canonical code,
Sigma in the order given. Worker pools use an order-preserving map, so the
output does not depend on ``jobs``.
"""
from __future__ import annotations

import collections
import multiprocessing
import re
from typing import Optional

from .enumeration import MAX_ENUM_ORDER, canonical_graph6, enumerate_graphs
from .formats import parse_graph6
from .graph_core import Graph, GraphError, complete_graph, cycle_graph
from .report import CensusRecord
from .stability import check_theorem1, check_theorem2, classify_pair

NAMED_SIGMAS = {
    "k2": lambda: complete_graph(2),
    "c3": lambda: cycle_graph(3),
    "k4": lambda: complete_graph(4),
    "c5": lambda: cycle_graph(5),
}


def parse_sigma_set(text: str) -> list[Graph]:
    """``k2,c5`` picks named graphs; ``all<=M`` takes every connected
    graph of order 2..M."""
    text = text.strip().lower()
    m = re.fullmatch(r"all<=(\d+)", text)
    if m:
        bound = int(m.group(1))
        if not 2 <= bound <= MAX_ENUM_ORDER:
            raise GraphError(f"sigma order bound must lie in 2..{MAX_ENUM_ORDER}")
        return [S for n in range(2, bound + 1) for S in enumerate_graphs(n, connected_only=True)]
    out = []
    for name in filter(None, (p.strip() for p in text.split(","))):
        if name not in NAMED_SIGMAS:
            raise GraphError(f"unknown sigma {name!r}; choose from {', '.join(NAMED_SIGMAS)} or all<=M")
        out.append(NAMED_SIGMAS[name]())
    if not out:
        raise GraphError("empty sigma set")
    return out


def census_gammas(max_gamma: int) -> list[Graph]:
    if not 2 <= max_gamma <= MAX_ENUM_ORDER:
        raise GraphError(f"--max-gamma must lie in 2..{MAX_ENUM_ORDER} (enumeration limit)")
    return [G for n in range(2, max_gamma + 1) for G in enumerate_graphs(n)]


def census_record(task) -> CensusRecord:
    g6, s6, max_factor_order = task
    G, S = parse_graph6(g6), parse_graph6(s6)
    rep = classify_pair(G, S, max_factor_order=max_factor_order, find_witness=False)
    return CensusRecord(
        gammaCanonical=g6,
        sigmaCanonical=s6,
        classification=rep.classification.value,
        theorem1=check_theorem1(G, S, rep).verdict,
        theorem2=check_theorem2(G, S, report=rep).verdict,
        reasons=list(rep.reasons),
        orders={"autGamma": rep.aut_gamma_order, "autSigma": rep.aut_sigma_order,
                "autProduct": rep.aut_product_order, "q": rep.q_order, "p": rep.p_order},
    )


def run_census(max_gamma: int, sigmas: list[Graph], jobs: int = 1,
               max_factor_order: int = 4) -> list[CensusRecord]:
    gammas = [canonical_graph6(G) for G in census_gammas(max_gamma)]
    sig6 = [canonical_graph6(S) for S in sigmas]
    tasks = [(g, s, max_factor_order) for g in gammas for s in sig6]
    if jobs <= 1:
        return [census_record(t) for t in tasks]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(census_record, tasks, chunksize=16)


def census_summary(records: list[CensusRecord]) -> dict:
    counts = collections.Counter(r.classification for r in records)
    return {
        "summary": True,
        "records": len(records),
        "classifications": dict(sorted(counts.items())),
        "theorem1": dict(sorted(collections.Counter(r.theorem1 for r in records).items())),
        "theorem2": dict(sorted(collections.Counter(r.theorem2 for r in records).items())),
        "failures": sum(r.theorem1 == "fail" or r.theorem2 == "fail" for r in records),
    }
