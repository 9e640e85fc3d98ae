import itertools
import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from racgqc.completion import Budget, complete
from racgqc.cubes import (CubeComplex, attach_round, based_isomorphic, canonical_cube,
                          complex_from_dict, dump_complex, euler, fold_saturate, load_complex,
                          rose, status, torsion_scan, trace, vertex_fullness)
from racgqc.errors import EmptyWord, InfiniteComplex, NotFolded, UnknownLetter
from racgqc.graphs import SimplicialGraph, edgeless_graph
from racgqc.partite import single_edge_graph
from racgqc.words import parse_word as W, reduce

ABC = edgeless_graph(["a", "b", "c"])


def folded(words, g):
    return fold_saturate(rose([W(w) for w in words], g))[0]


def test_rose_shapes(c4):
    assert rose([W("s1 s2 s3 s4")], c4).counts() == (4, 4, 0)
    r = rose([W("s1")], c4)
    assert r.counts() == (1, 1, 0)
    (u, v, label), = r.edges.values()
    assert u == v == r.base and label == 0
    assert rose([W("s1 s2"), W("s3 s4")], c4).counts() == (3, 4, 0)


def test_rose_errors(c4):
    with pytest.raises(EmptyWord):
        rose([()], c4)
    with pytest.raises(UnknownLetter):
        rose([W("x")], c4)


def test_fold_examples(pair):
    r = rose([W("a b"), W("a b")], pair)
    assert status(r).folded is False
    out, n = fold_saturate(r)
    assert out.counts() == (2, 2, 0) and n > 0
    again, m = fold_saturate(out)
    assert m == 0 and again.counts() == out.counts()
    assert fold_saturate(rose([W("a a")], pair))[0].counts() == (2, 1, 0)


def test_fold_does_not_mutate_input(pair):
    r = rose([W("a b"), W("a b")], pair)
    fold_saturate(r)
    assert r.counts() == (3, 4, 0)


def test_attach_examples(pair, edge):
    two = folded(["s1 s2"], edge)
    st0 = status(two)
    assert st0.folded and not st0.cube_full
    out, n = attach_round(two)
    assert n == 1 and len(out.cubes_of_dim(2)) == 1
    assert attach_round(folded(["a b"], pair))[1] == 0
    full = complete(two).complex
    same, n = attach_round(full)
    assert n == 0 and same.counts() == full.counts()


def test_attach_requires_folded(pair):
    with pytest.raises(NotFolded):
        attach_round(rose([W("a b"), W("a b")], pair))


def test_status_of_two_cycle(pair):
    st0 = status(folded(["a b"], pair))
    assert st0.folded and st0.cube_full


def test_trace_examples(pair):
    cx = folded(["a b"], pair)
    assert trace(cx, W("a b")).kind == "Loop"
    r = trace(cx, W("a"))
    assert r.kind == "PathEndsAt" and r.vertex != cx.base
    assert trace(cx, W("b a")).is_loop
    stuck = trace(folded(["a b"], ABC), W("a c"))
    assert stuck.kind == "Stuck" and stuck.position == 1
    with pytest.raises(NotFolded):
        trace(rose([W("a b"), W("a b")], pair), W("a"))


def test_torsion_examples(pair, edge):
    assert torsion_scan(rose([W("s1")], edge)) == (0, ("s1",))
    done = complete(rose([W("s1 s2")], edge)).complex
    v, word = torsion_scan(done)
    assert sorted(word) == ["s1", "s2"]
    assert torsion_scan(folded(["a b"], pair)) is None


def test_vertex_fullness_examples(pair, c4):
    assert vertex_fullness(folded(["a b"], pair))
    assert not vertex_fullness(rose([W("s1 s2 s3 s4")], c4))
    lone = CubeComplex(pair)
    lone.add_vertex()
    assert not vertex_fullness(lone)


def test_euler_examples(pair, edge):
    assert euler(folded(["a b"], pair)) == 0
    sq = complete(rose([W("s1 s2 s1 s2")], edge))
    assert sq.complex.counts()[2] >= 1
    cx = CubeComplex(edge)
    v = [cx.add_vertex() for _ in range(4)]
    e = [cx.add_edge(v[0], v[1], 0), cx.add_edge(v[2], v[3], 0),
         cx.add_edge(v[0], v[2], 1), cx.add_edge(v[1], v[3], 1)]
    cx.add_cube((0, 1), v, e)
    assert euler(cx) == 1


def test_euler_rejects_truncated_reports(c4):
    r = complete(rose([W("s1 s2 s3 s4")], c4), Budget(200, 5))
    with pytest.raises(InfiniteComplex):
        euler(r)


def test_based_isomorphic_examples():
    cx = folded(["a b"], ABC)
    assert based_isomorphic(cx, cx)
    fresh = CubeComplex(ABC)
    b = fresh.add_vertex(10)
    o = fresh.add_vertex(3)
    fresh.base = b
    fresh.add_edge(b, o, 0)
    fresh.add_edge(o, b, 1)
    assert based_isomorphic(cx, fresh)
    assert not based_isomorphic(cx, folded(["a c"], ABC))


def test_canonical_cube_ignores_corner_choice():
    verts, edges = [0, 1, 2, 3], [10, 11, 12, 13]
    base = canonical_cube((0, 1), verts, edges)
    # same square seen from corner 3 with directions swapped
    assert canonical_cube((1, 0), [3, 1, 2, 0], [13, 12, 11, 10]) == base


# -- properties ---------------------------------------------------------------------

@st.composite
def graph_and_words(draw, max_vertices=4, max_words=3, max_len=5):
    g = draw(graphs(1, max_vertices))
    word = st.lists(st.sampled_from(g.vertices), min_size=1, max_size=max_len).map(tuple)
    return g, draw(st.lists(word, min_size=1, max_size=max_words))


def _check_invariants(cx: CubeComplex):
    g = cx.graph
    for v in cx.vertices:
        for label, es in cx.inc[v].items():
            assert len(es) <= 1, "two edges with one label at a vertex"
    for labels, verts, edges in cx.cubes.values():
        assert g.is_clique_idx(labels)
        for eid in edges:
            assert eid in cx.edges
    assert cx.base in cx.vertices


def _loop_samples(words, rng, count=8, max_factors=3):
    out = [tuple(w) for w in words]
    for _ in range(count):
        k = rng.randint(1, max_factors)
        w = ()
        for _ in range(k):
            x = rng.choice(words)
            w += tuple(x) if rng.random() < 0.5 else tuple(reversed(x))
        out.append(w[:12])
    return [w for w in out if len(w) <= 12]


@given(graph_and_words(), st.integers(0, 10 ** 6))
def test_loops_persist_through_operations(gw, seed):
    g, words = gw
    rng = random.Random(seed)
    cx, _ = fold_saturate(rose(words, g))
    loops = [w for w in _loop_samples(words, rng) if trace(cx, w).is_loop]
    assert all(trace(cx, w).is_loop for w in words)
    for _ in range(3):
        _check_invariants(cx)
        cx, _ = attach_round(cx)
        cx, _ = fold_saturate(cx)
        for w in loops:
            assert trace(cx, w).is_loop
            assert trace(cx, w) == trace(cx, w)


@given(graph_and_words())
def test_fold_idempotent_and_attach_identity_when_full(gw):
    g, words = gw
    cx, _ = fold_saturate(rose(words, g))
    again, n = fold_saturate(cx)
    assert n == 0 and again.counts() == cx.counts()
    r = complete(rose(words, g), Budget(400, 8))
    if r.finite:
        same, n = attach_round(r.complex)
        assert n == 0 and based_isomorphic(same, r.complex)
        for w in words:
            assert trace(r.complex, reduce(w, g)).is_loop


@given(graph_and_words())
def test_complex_file_roundtrip(gw):
    g, words = gw
    cx = complete(rose(words, g), Budget(200, 4)).complex
    text = dump_complex(cx)
    back = load_complex(text)
    assert dump_complex(back) == text
    assert based_isomorphic(back, cx)


def test_complex_file_squares_are_cyclic(edge):
    cx = complete(rose([W("s1 s2")], edge)).complex
    doc = json.loads(dump_complex(cx))
    (sq,) = doc["squares"]
    ends = {e["id"]: {e["u"], e["v"]} for e in doc["edges"]}
    for a, b in zip(sq, sq[1:] + sq[:1]):
        assert ends[a] & ends[b]
    stripped = dict(doc)
    del stripped["cubes"]
    assert based_isomorphic(complex_from_dict(stripped), cx)
