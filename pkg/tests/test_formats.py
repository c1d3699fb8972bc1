import random

import pytest
from hypothesis import given

from gpstab.formats import (FormatError, emit_edgelist, emit_graph6, parse_edgelist, parse_graph6,
                            read_graph)
from gpstab.graph_core import GraphError, build_graph, complete_graph, cycle_graph, empty_graph

from conftest import graphs


def test_graph6_examples():
    assert parse_graph6("A_") == complete_graph(2)
    assert emit_graph6(complete_graph(2)) == "A_"
    assert parse_graph6("Dhc") == build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert emit_graph6(empty_graph(1)) == "@"
    assert emit_graph6(empty_graph(0)) == "?"
    # the C5 above with vertex labels in cycle order
    assert emit_graph6(cycle_graph(5)) == "Dhc"


def independent_encoder(G):
    """graph6 by string manipulation over the bit list."""
    bits = "".join("1" if G.has_edge(i, j) else "0" for j in range(G.n) for i in range(j))
    bits += "0" * (-len(bits) % 6)
    return chr(63 + G.n) + "".join(chr(63 + int(bits[k:k + 6], 2)) for k in range(0, len(bits), 6))


@pytest.mark.parametrize("text, msg", [
    ("A_extra", "length mismatch"),
    ("", "empty"),
    ("A ", "outside 63..126"),
    ("BF", "padding"),
    ("~~~", "orders above 62"),
])
def test_graph6_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        parse_graph6(text)


def test_graph6_order_limit():
    with pytest.raises(FormatError):
        emit_graph6(empty_graph(63))
    G = cycle_graph(62)
    assert parse_graph6(emit_graph6(G)) == G


@given(graphs(min_n=1, max_n=20))
def test_graph6_round_trip(G):
    s = emit_graph6(G)
    assert s == independent_encoder(G)
    assert parse_graph6(s) == G
    assert emit_graph6(parse_graph6(s)) == s


def test_edgelist_examples():
    assert parse_edgelist("n 2\n0 1") == complete_graph(2)
    G = parse_edgelist("# header comment\n\nn 3  # three vertices\n0 1\n1 2 # path\n")
    assert G.edges == ((0, 1), (1, 2))
    assert parse_edgelist(emit_edgelist(G, "path\non three")) == G


@pytest.mark.parametrize("text, line, msg", [
    ("n 2\n0 2", 2, "out of range"),
    ("n 2\n1 1", 2, "loop"),
    ("n 3\n0 1\n1 0", 3, "duplicate"),
    ("n 3\n0 x", 2, "non-integer"),
    ("n 3\n0 1 2", 2, "expected"),
    ("0 1", 1, "header"),
    ("n -1", 1, "negative"),
    ("n two", 1, "bad vertex count"),
])
def test_edgelist_errors(text, line, msg):
    with pytest.raises(FormatError, match=msg) as exc:
        parse_edgelist(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_edgelist_missing_header():
    with pytest.raises(FormatError, match="missing header"):
        parse_edgelist("# nothing\n")


def test_read_graph(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text("Dhc\n")
    assert read_graph(p, "graph6") == cycle_graph(5)
    with pytest.raises(ValueError):
        read_graph(p, "sparse6")
    with pytest.raises(OSError):
        read_graph(tmp_path / "missing.txt")


def test_format_error_is_graph_error():
    assert issubclass(FormatError, GraphError)


def test_random_round_trip_batch():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 20)
        G = build_graph(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < 0.4])
        assert parse_graph6(emit_graph6(G)) == G
