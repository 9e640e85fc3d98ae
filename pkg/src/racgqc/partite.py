"""Partite graphs over a base graph, the explicit square-free construction, and
the surface-subgroup generators of even cycles."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import networkx as nx

from .errors import BadParameter, InvalidK, ParseError, ValidationError
from .graphs import SimplicialGraph, cycle_graph, graph_from_dict


class Connector(Enum):
    CYCLE = "cycle"
    PATH = "path"


@dataclass(frozen=True)
class PartiteGraph:
    graph: SimplicialGraph                 # the partite graph itself
    base: SimplicialGraph                  # the graph it is partite over
    decomposition: dict                    # base vertex -> list of graph vertices
    connector: Connector
    k: Optional[int] = None

    @property
    def part_of(self) -> dict[str, str]:
        return {a: s for s, part in self.decomposition.items() for a in part}

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d.update({
            "base": self.base.to_dict(),
            "decomposition": {s: list(self.decomposition[s]) for s in self.base.vertices},
            "connector": self.connector.value,
            "k": self.k,
        })
        return d


def partite_from_dict(obj) -> PartiteGraph:
    try:
        return PartiteGraph(
            graph_from_dict(obj),
            graph_from_dict(obj["base"]),
            {s: list(part) for s, part in obj["decomposition"].items()},
            Connector(obj["connector"]),
            obj.get("k"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed partite file: {exc!r}") from exc


def load_partite(text: str) -> PartiteGraph:
    try:
        return partite_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def dump_partite(p: PartiteGraph) -> str:
    return json.dumps(p.to_dict())


def part_name(i: int, l: int) -> str:
    """Name of the l-th vertex of the part over base vertex number i (1-based)."""
    return f"a{i}_{l}"


def min_valid_k(num_edges: int) -> int:
    k = 8 * 3 ** num_edges + 1
    while k % 3 == 0:
        k += 1
    return k


def check_k(k: int, num_edges: int, force: bool = False):
    if k < 1:
        raise InvalidK("k must be positive")
    for p in range(1, num_edges + 1):
        if (3 ** p) % k == 0:
            raise InvalidK(f"k={k} makes both offsets of edge {p} coincide")
    if force:
        return
    if k <= 8 * 3 ** num_edges:
        raise InvalidK(f"k={k} must exceed 8*3^{num_edges} = {8 * 3 ** num_edges}")
    if k % 3 == 0:
        raise InvalidK(f"k={k} must not be divisible by 3")


def build_partite(g: SimplicialGraph, k: Optional[int] = None, kind=Connector.CYCLE,
                  force: bool = False) -> PartiteGraph:
    """Square-free partite graph over ``g`` with parts of size ``k``.

    Base edges are numbered 1..E in lexicographic order of their endpoint
    indices and oriented from the smaller index to the larger.  Edge p joins
    vertex l of the tail part to vertices l + 3^p and l + 2*3^p (mod k) of the
    head part.  Path connectors drop the edge (l=0, l + 3^p) of each connector.
    """
    kind = Connector(kind)
    num_edges = len(g.edge_list)
    if k is None:
        k = min_valid_k(num_edges)
    check_k(k, num_edges, force)

    names = [part_name(i + 1, l) for i in range(len(g)) for l in range(k)]
    edges = []
    for p, (x, y) in enumerate(g.edge_list, start=1):
        step = 3 ** p
        dropped = (part_name(x + 1, 0), part_name(y + 1, step % k))
        for l in range(k):
            for off in (step, 2 * step):
                e = (part_name(x + 1, l), part_name(y + 1, (l + off) % k))
                if kind is Connector.PATH and e == dropped:
                    continue
                edges.append(e)
    delta = SimplicialGraph.from_lists(names, edges)
    decomposition = {s: [part_name(i + 1, l) for l in range(k)] for i, s in enumerate(g.vertices)}
    return PartiteGraph(delta, g, decomposition, kind, k)


def neighbors_in_part(p: PartiteGraph, a: str, s: str) -> list[str]:
    part = set(p.decomposition[s])
    return [b for b in p.graph.neighbors(a) if b in part]


def connector(p: PartiteGraph, s: str, t: str) -> SimplicialGraph:
    """The subgraph induced by the parts over s and t."""
    from .graphs import induced
    return induced(p.graph, list(p.decomposition[s]) + list(p.decomposition[t]))


@dataclass(frozen=True)
class PartiteVerdict:
    ok: bool
    violation: Optional[str] = None
    witness: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violation": self.violation,
                "witness": list(self.witness) if self.witness else None}


def verify_partite(p: PartiteGraph) -> PartiteVerdict:
    g, base = p.graph, p.base
    if set(p.decomposition) != set(base.vertices):
        return PartiteVerdict(False, "decomposition keys differ from base vertices")
    seen: dict[str, str] = {}
    for s in base.vertices:
        part = p.decomposition[s]
        if not part:
            return PartiteVerdict(False, "empty part", (s,))
        for a in part:
            if a not in g.index:
                return PartiteVerdict(False, "unknown vertex in decomposition", (a,))
            if a in seen:
                return PartiteVerdict(False, "parts overlap", (a, seen[a], s))
            seen[a] = s
    if len(seen) != len(g):
        missing = [a for a in g.vertices if a not in seen]
        return PartiteVerdict(False, "parts do not cover the graph", (missing[0],))

    for i, j in g.edge_list:
        a, b = g.vertices[i], g.vertices[j]
        if seen[a] == seen[b]:
            return PartiteVerdict(False, "intra-part edge", (a, b))
        if not base.adjacent(seen[a], seen[b]):
            return PartiteVerdict(False, "edge between parts over non-adjacent base vertices", (a, b))

    for x, y in base.edge_list:
        s, t = base.vertices[x], base.vertices[y]
        sub = connector(p, s, t).to_networkx()
        if not nx.is_connected(sub):
            return PartiteVerdict(False, "disconnected connector", (s, t))
        degrees = [d for _, d in sub.degree()]
        if p.connector is Connector.CYCLE:
            if any(d != 2 for d in degrees):
                return PartiteVerdict(False, "connector is not a cycle", (s, t))
        else:
            if max(degrees) > 2 or sub.number_of_edges() != sub.number_of_nodes() - 1:
                return PartiteVerdict(False, "connector is not a simple path", (s, t))
    return PartiteVerdict(True)


# -- even cycles over a single edge ----------------------------------------------

def surface_generators(two_k: int) -> list[tuple[str, ...]]:
    """{p1 pi : i odd > 1} followed by {p2 pi : i even > 2} over the cycle p1..p{2k}."""
    if two_k < 6 or two_k % 2:
        raise BadParameter("need an even cycle length of at least 6")
    odd = [("p1", f"p{i}") for i in range(3, two_k + 1, 2)]
    even = [("p2", f"p{i}") for i in range(4, two_k + 1, 2)]
    return odd + even


def single_edge_graph(a: str = "t1", b: str = "t2") -> SimplicialGraph:
    return SimplicialGraph.from_lists([a, b], [(a, b)])


def even_cycle_partite(two_k: int) -> PartiteGraph:
    """The 2k-cycle p1..p{2k} as a partite graph over the edge t1-t2 (odd
    vertices over t1, even over t2); its connector is the whole cycle."""
    if two_k < 4 or two_k % 2:
        raise BadParameter("need an even cycle length of at least 4")
    c = cycle_graph(two_k, "p")
    decomposition = {
        "t1": [f"p{i}" for i in range(1, two_k + 1, 2)],
        "t2": [f"p{i}" for i in range(2, two_k + 1, 2)],
    }
    return PartiteGraph(c, single_edge_graph(), decomposition, Connector.CYCLE, two_k // 2)


def with_decomposition(p: PartiteGraph, decomposition: dict) -> PartiteGraph:
    return PartiteGraph(p.graph, p.base, decomposition, p.connector, p.k)


def ensure_valid(p: PartiteGraph) -> PartiteGraph:
    v = verify_partite(p)
    if not v.ok:
        raise ValidationError(f"not a partite graph: {v.violation} {v.witness or ''}".strip())
    return p
