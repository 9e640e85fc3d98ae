import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from racgqc.graphs import SimplicialGraph, complete_graph, cycle_graph, edgeless_graph  # noqa: E402
from racgqc.partite import single_edge_graph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def graphs(draw, min_vertices=1, max_vertices=7):
    n = draw(st.integers(min_vertices, max_vertices))
    names = [f"v{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimplicialGraph.from_lists(names, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def graph_and_word(draw, max_vertices=5, max_len=10):
    g = draw(graphs(1, max_vertices))
    w = draw(st.lists(st.sampled_from(g.vertices), max_size=max_len))
    return g, tuple(w)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def c6():
    return cycle_graph(6, "p")


@pytest.fixture
def triangle():
    return complete_graph(3)


@pytest.fixture
def pair():
    return edgeless_graph(["a", "b"])


@pytest.fixture
def edge():
    return single_edge_graph("s1", "s2")
