"""JSON documents for single-pair analyses and census records."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from .graph_core import Graph, build_graph
from .stability import check_theorem1, check_theorem2, classify_pair

SCHEMA_VERSION = 1


@dataclass
class GraphDescriptor:
    order: int
    edges: list
    format: str = "edgelist"

    @classmethod
    def of(cls, G: Graph, fmt: str = "edgelist") -> "GraphDescriptor":
        return cls(G.n, [list(e) for e in G.edges], fmt)

    def graph(self) -> Graph:
        return build_graph(self.order, self.edges)


@dataclass
class ReportDocument:
    gamma: GraphDescriptor
    sigma: GraphDescriptor
    orders: dict  # autGamma, autSigma, autProduct, q, p
    classification: str
    reasons: list = field(default_factory=list)
    witness: Optional[list] = None
    coprime: str = ""
    theorem1: str = ""
    theorem2: str = ""
    theorem2Reason: str = ""
    lemmas: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    schemaVersion: int = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        if data.get("schemaVersion") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schemaVersion {data.get('schemaVersion')!r}")
        data["gamma"] = GraphDescriptor(**data["gamma"])
        data["sigma"] = GraphDescriptor(**data["sigma"])
        return cls(**data)

    def to_text(self) -> str:
        o = self.orders
        lines = [
            f"Gamma: order {self.gamma.order}, {len(self.gamma.edges)} edges",
            f"Sigma: order {self.sigma.order}, {len(self.sigma.edges)} edges",
            f"|Aut(Gamma)| = {o['autGamma']}",
            f"|Aut(Sigma)| = {o['autSigma']}",
            f"|Aut(Gamma x Sigma)| = {o['autProduct']}",
            f"|Q| = {o['q']}, |P| = {o['p']}",
            f"classification: {self.classification}"
            + (f" ({', '.join(self.reasons)})" if self.reasons else ""),
            f"coprimality: {self.coprime}",
            f"theorem 1 check: {self.theorem1}",
            f"theorem 2 check: {self.theorem2}" + (f" ({self.theorem2Reason})" if self.theorem2Reason else ""),
        ]
        if self.witness is not None:
            lines.append("nondiagonal witness: " + " | ".join(" ".join(map(str, p)) for p in self.witness))
        for name, res in self.lemmas.items():
            extra = f" ({', '.join(res['reasons'])})" if res["reasons"] else ""
            lines.append(f"lemma {name}: {res['status']}{extra}")
        return "\n".join(lines)


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


def build_report(G: Graph, S: Graph, fmt: str = "edgelist", check_lemmas: bool = False,
                 cap: Optional[int] = None, max_factor_order: int = 4) -> ReportDocument:
    from .fiber_analysis import LEMMAS, verify_lemma

    timings = {}
    t0 = time.perf_counter()
    rep = classify_pair(G, S, max_factor_order=max_factor_order, cap=cap)
    timings["classify"] = _ms(t0)
    t0 = time.perf_counter()
    t1 = check_theorem1(G, S, rep)
    timings["theorem1"] = _ms(t0)
    t0 = time.perf_counter()
    t2 = check_theorem2(G, S, cap=cap, report=rep)
    timings["theorem2"] = _ms(t0)
    lemmas = {}
    if check_lemmas:
        t0 = time.perf_counter()
        for name in LEMMAS:
            res = verify_lemma(name, G, S, cap=cap)
            lemmas[name] = {"status": res.status, "reasons": list(res.reasons)}
        timings["lemmas"] = _ms(t0)
    return ReportDocument(
        gamma=GraphDescriptor.of(G, fmt),
        sigma=GraphDescriptor.of(S, fmt),
        orders={"autGamma": rep.aut_gamma_order, "autSigma": rep.aut_sigma_order,
                "autProduct": rep.aut_product_order, "q": rep.q_order, "p": rep.p_order},
        classification=rep.classification.value,
        reasons=list(rep.reasons),
        witness=[list(p) for p in rep.witness] if rep.witness is not None else None,
        coprime=rep.coprime.kind.value,
        theorem1=t1.verdict,
        theorem2=t2.verdict,
        theorem2Reason=t2.reason,
        lemmas=lemmas,
        timings=timings,
    )


@dataclass
class CensusRecord:
    gammaCanonical: str
    sigmaCanonical: str
    classification: str
    theorem1: str
    theorem2: str
    reasons: list = field(default_factory=list)
    orders: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CensusRecord":
        return cls(**json.loads(text))
