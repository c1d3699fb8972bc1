"""Graph serialization: graph6 (orders up to 62) and a plain edge-list text format.

Edge-list files look like::

    # comment
    n 5
    0 1
    2 3
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

from .graph_core import Graph, GraphError, build_graph

MAX_GRAPH6_ORDER = 62


class FormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _pairs(n):
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> Graph:
    s = text.rstrip("\r\n")
    if not s:
        raise FormatError("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"byte {ord(ch)} at offset {pos} outside 63..126")
    n = ord(s[0]) - 63
    if n > MAX_GRAPH6_ORDER:
        raise FormatError(f"orders above {MAX_GRAPH6_ORDER} are not supported")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    data = s[1:]
    if len(data) != nbytes:
        raise FormatError(f"length mismatch: n={n} needs {nbytes} data bytes, got {len(data)}")
    bits = []
    for ch in data:
        v = ord(ch) - 63
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits")
    edges = [(i, j) for (i, j), b in zip(_pairs(n), bits) if b]
    return build_graph(n, edges)


def emit_graph6(G: Graph) -> str:
    if G.n > MAX_GRAPH6_ORDER:
        raise FormatError(f"orders above {MAX_GRAPH6_ORDER} are not supported")
    bits = [1 if G.has_edge(i, j) else 0 for i, j in _pairs(G.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + G.n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(63 + v))
    return "".join(out)


def parse_edgelist(text: str) -> Graph:
    n = None
    edges = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise FormatError("expected header 'n <count>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise FormatError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 0:
                raise FormatError("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise FormatError("expected 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer vertex id in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex id out of range for n={n}", lineno)
        if u == v:
            raise FormatError(f"loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in lines:
            raise FormatError(f"duplicate edge {{{u},{v}}}", lineno)
        lines.append(key)
        edges.append((u, v))
    if n is None:
        raise FormatError("missing header 'n <count>'")
    return build_graph(n, edges)


def emit_edgelist(G: Graph, comment: str = "") -> str:
    out = [f"# {line}" for line in comment.splitlines()]
    out.append(f"n {G.n}")
    out.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(out) + "\n"


def read_graph(path: Union[str, Path], fmt: str = "edgelist") -> Graph:
    text = Path(path).read_text()
    if fmt == "graph6":
        return parse_graph6(text.strip())
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown graph format {fmt!r}")
