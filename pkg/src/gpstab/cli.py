"""Command-line entry point: ``gpstab analyze | census | verify``.

Exit codes: 0 success, 1 input error or failed check, 2 automorphism cap
exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Optional

from .census import census_summary, parse_sigma_set, run_census
from .fiber_analysis import LEMMAS, verify_lemma
from .formats import read_graph
from .graph_core import Graph, GraphError, build_graph, complete_graph, cycle_graph
from .perm_groups import CapExceeded
from .report import build_report
from .sigma_auto import sigma_automorphism_group
from .stability import classify_pair

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 1, 2


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture file, e.g. ``gamma1.txt``."""
    return Path(str(resources.files("gpstab") / "fixtures" / name))


def builtin_suite() -> list[tuple[str, Graph, Graph]]:
    prism = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    return [
        ("K4 x C5", complete_graph(4), cycle_graph(5)),
        ("C3 x K4", cycle_graph(3), complete_graph(4)),
        ("C5 x K4", cycle_graph(5), complete_graph(4)),
        ("K2 x C3", complete_graph(2), cycle_graph(3)),
        ("C5 x K2", cycle_graph(5), complete_graph(2)),
        ("prism x K2", prism, complete_graph(2)),
        ("C6 x C3", cycle_graph(6), cycle_graph(3)),
    ]


def _read_pair(args) -> tuple[Graph, Graph]:
    return read_graph(args.gamma, args.format), read_graph(args.sigma, args.format)


def cmd_analyze(args) -> int:
    G, S = _read_pair(args)
    doc = build_report(G, S, args.format, args.check_lemmas, args.max_aut)
    print(doc.to_json() if args.json else doc.to_text())
    bad = [n for n, r in doc.lemmas.items() if r["status"] == "Fail"]
    return EXIT_INPUT if bad or "fail" in (doc.theorem1, doc.theorem2) else EXIT_OK


def cmd_census(args) -> int:
    sigmas = parse_sigma_set(args.sigma_set)
    records = run_census(args.max_gamma, sigmas, args.jobs, args.max_factor_order)
    summary = census_summary(records)
    lines = [r.to_json() for r in records]
    lines.append(json.dumps(summary, separators=(",", ":"), sort_keys=True))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(lines[-1])
    else:
        sys.stdout.write(text)
    return EXIT_INPUT if summary["failures"] else EXIT_OK


def _sigma_identities(G: Graph, S: Graph, cap: Optional[int]) -> str:
    """|Q| = |Aut_S(G)| and |P| = |Aut_S(G)| |Aut S|."""
    if min(S.degrees) == 0:
        return "n/a"
    rep = classify_pair(G, S, find_witness=False)
    try:
        k = sigma_automorphism_group(G, S, cap).order
    except CapExceeded:
        return "capped"
    ok = rep.q_order == k and rep.p_order == k * rep.aut_sigma_order
    return "Pass" if ok else f"Fail (|Q|={rep.q_order}, |P|={rep.p_order}, |Aut_S|={k})"


def cmd_verify(args) -> int:
    names = list(LEMMAS) if args.lemma == "all" else [args.lemma]
    if args.lemma != "all" and args.lemma not in LEMMAS:
        print(f"gpstab: unknown lemma {args.lemma!r}; choose from {', '.join(LEMMAS)} or all",
              file=sys.stderr)
        return EXIT_INPUT
    if args.builtin_suite:
        pairs = builtin_suite()
    elif args.gamma and args.sigma:
        G, S = _read_pair(args)
        pairs = [(f"{Path(args.gamma).name} x {Path(args.sigma).name}", G, S)]
    else:
        print("gpstab: verify needs --builtin-suite or both --gamma and --sigma", file=sys.stderr)
        return EXIT_INPUT
    failed = False
    width = max(len(n) for n in names + ["Q/P"])
    for label, G, S in pairs:
        print(f"== {label}")
        for name in names:
            res = verify_lemma(name, G, S, samples=args.samples, cap=args.max_aut, raise_on_fail=False)
            extra = f" ({', '.join(res.reasons)})" if res.reasons else ""
            if res.status == "Fail":
                failed = True
                extra = f" witness {res.witness}"
            print(f"  {name:<{width}}  {res.status}{extra}")
        ident = _sigma_identities(G, S, args.max_aut)
        failed |= ident.startswith("Fail")
        print(f"  {'Q/P':<{width}}  {ident}")
    return EXIT_INPUT if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpstab", description="Stability of direct products of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p, required):
        p.add_argument("--gamma", required=required, help="Gamma graph file")
        p.add_argument("--sigma", required=required, help="Sigma graph file")
        p.add_argument("--format", choices=("graph6", "edgelist"), default="edgelist")
        p.add_argument("--max-aut", type=int, default=None,
                       help="cap on explicitly enumerated groups (default $GPS_MAX_AUT or 20000)")

    p = sub.add_parser("analyze", help="classify one pair")
    graph_args(p, True)
    p.add_argument("--json", action="store_true", help="single-line JSON report")
    p.add_argument("--check-lemmas", action="store_true", help="also run every fibre lemma check")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", help="classify all small Gamma against a Sigma set")
    p.add_argument("--max-gamma", type=int, required=True)
    p.add_argument("--sigma-set", default="k2,c3,c5,k4", help="comma list of k2,c3,c5,k4 or all<=M")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="write records here instead of standard output")
    p.add_argument("--max-factor-order", type=int, default=4, help="coprimality search bound")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run fibre lemma checks")
    graph_args(p, False)
    p.add_argument("--lemma", required=True, help="lemma id or 'all'")
    p.add_argument("--builtin-suite", action="store_true")
    p.add_argument("--samples", type=int, default=None, help="random group elements instead of all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"gpstab: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, OSError, ValueError) as exc:
        print(f"gpstab: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
