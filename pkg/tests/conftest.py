import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gpstab.cli import fixture_path
from gpstab.formats import read_graph
from gpstab.graph_core import build_graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, b in zip(pairs, bits) if b])


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(range(n))))


@pytest.fixture(scope="session")
def example_graphs():
    return {name: read_graph(fixture_path(f"{name}.txt"))
            for name in ("gamma1", "gamma2", "sigma", "gamma_bip", "k2", "k4")}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
