import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from oracles import brute_has_simple_4cycle, brute_has_triangle, hamiltonian_path_partite
from racgqc.errors import BadParameter, InvalidK
from racgqc.graphs import EndsKind, cycle_graph, one_ended_certificate, small_cycle_report
from racgqc.partite import (Connector, build_partite, check_k, connector, dump_partite,
                            even_cycle_partite, load_partite, min_valid_k, neighbors_in_part,
                            surface_generators, verify_partite, with_decomposition)
from racgqc.words import parse_word as W


@pytest.fixture(scope="module")
def big_cycle():
    return build_partite(cycle_graph(4), 649, Connector.CYCLE)


def test_min_valid_k():
    assert min_valid_k(4) == 649
    assert min_valid_k(1) == 25
    assert min_valid_k(0) == 10


@pytest.mark.parametrize("k", [648, 651, 600])
def test_invalid_k(k):
    with pytest.raises(InvalidK):
        build_partite(cycle_graph(4), k)


def test_force_still_rejects_coinciding_offsets():
    check_k(2, 4, force=True)
    with pytest.raises(InvalidK):
        check_k(3, 4, force=True)
    with pytest.raises(InvalidK):
        check_k(9, 4, force=True)


def test_default_k_is_smallest_valid():
    assert build_partite(cycle_graph(4)).k == 649


def test_four_cycle_build_shape(big_cycle):
    p = big_cycle
    assert len(p.graph) == 2596 and len(p.graph.edges) == 5192
    assert verify_partite(p).ok
    for x, y in p.base.edge_list:
        sub = connector(p, p.base.vertices[x], p.base.vertices[y])
        assert len(sub) == 1298 and len(sub.edges) == 1298
    r = small_cycle_report(p.graph)
    assert not (r.has_triangle or r.has_simple_4cycle or r.has_induced_4cycle)


def test_first_edge_neighbors(big_cycle):
    # the first base edge is s1-s2, oriented s1 -> s2, p = 1
    assert sorted(neighbors_in_part(big_cycle, "a1_0", "s2")) == ["a2_3", "a2_6"]


def test_cycle_kind_degree_regular(big_cycle):
    p = big_cycle
    for s, part in p.decomposition.items():
        for a in part[:50]:
            assert p.graph.degree(a) == 2 * p.base.degree(s)


def test_path_kind_shape():
    p = build_partite(cycle_graph(4), 649, Connector.PATH)
    assert len(p.graph.edges) == 5188
    assert verify_partite(p).ok
    assert not p.graph.adjacent("a1_0", "a2_3")
    r = small_cycle_report(p.graph)
    assert not (r.has_triangle or r.has_simple_4cycle)


def test_partite_file_roundtrip():
    p = build_partite(cycle_graph(3), 2, force=True)
    text = dump_partite(p)
    back = load_partite(text)
    assert back == p and dump_partite(back) == text
    assert back.decomposition["s1"] == ["a1_0", "a1_1"]


def test_even_cycle_decomposition_verifies():
    p = even_cycle_partite(6)
    assert verify_partite(p).ok
    moved = dict(p.decomposition)
    moved["t1"] = moved["t1"] + ["p2"]
    moved["t2"] = [a for a in moved["t2"] if a != "p2"]
    v = verify_partite(with_decomposition(p, moved))
    assert not v.ok and v.violation == "intra-part edge"


def test_verify_catches_overlap_and_bad_connector():
    p = even_cycle_partite(6)
    overlap = dict(p.decomposition, t2=p.decomposition["t2"] + ["p1"])
    assert verify_partite(with_decomposition(p, overlap)).violation == "parts overlap"
    path = build_partite(cycle_graph(4), 2, Connector.PATH, force=True)
    as_cycle = type(path)(path.graph, path.base, path.decomposition, Connector.CYCLE, path.k)
    assert verify_partite(as_cycle).violation == "connector is not a cycle"


def test_surface_generators():
    assert surface_generators(6) == [W("p1 p3"), W("p1 p5"), W("p2 p4"), W("p2 p6")]
    assert len(surface_generators(8)) == 6
    for bad in (4, 7, 2):
        with pytest.raises(BadParameter):
            surface_generators(bad)


# -- properties -----------------------------------------------------------------

def _small_valid_k(num_edges: int, rng_choice: int) -> int:
    k = min_valid_k(num_edges)
    return k + rng_choice + (1 if (k + rng_choice) % 3 == 0 else 0)


@given(graphs(max_vertices=4), st.integers(0, 20), st.sampled_from(list(Connector)))
def test_builds_verify_and_are_square_free(g, extra, kind):
    if len(g.edges) > 3:
        g = type(g).from_lists(g.vertices, [tuple(e) for e in sorted(map(sorted, g.edges))][:3])
    p = build_partite(g, _small_valid_k(len(g.edges), extra), kind)
    assert verify_partite(p).ok
    r = small_cycle_report(p.graph)
    assert not r.has_triangle and not r.has_simple_4cycle


@pytest.mark.parametrize("kind", list(Connector))
def test_four_cycle_small_forced_builds_match_brute_force(kind):
    for k in (2, 4, 5, 7, 8):
        p = build_partite(cycle_graph(4), k, kind, force=True)
        assert verify_partite(p).ok
        r = small_cycle_report(p.graph)
        assert r.has_triangle == brute_has_triangle(p.graph)
        assert r.has_simple_4cycle == brute_has_simple_4cycle(p.graph)


@pytest.mark.parametrize("k", [2, 4, 5])
def test_one_endedness_transfers(k):
    base = cycle_graph(4)
    assert one_ended_certificate(base).kind is EndsKind.ONE_ENDED
    for kind in Connector:
        p = build_partite(base, k, kind, force=True)
        assert one_ended_certificate(p.graph).kind is EndsKind.ONE_ENDED


def test_hamiltonian_oracle_builds_verify():
    for seed in (None, 1, 2, 3):
        assert verify_partite(hamiltonian_path_partite(cycle_graph(4), 3, seed)).ok
