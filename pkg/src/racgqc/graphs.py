"""Defining graphs of right-angled Coxeter groups.

A :class:`SimplicialGraph` is immutable.  Its vertex order is the generator
order used everywhere downstream (ShortLex, canonical edge numbering, cube
direction order), so it is never derived from the vertex names.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Sequence

import networkx as nx

from .errors import ParseError, UnknownVertex, ValidationError


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: tuple[str, ...]
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(set(verts)) != len(verts):
            raise ValidationError("duplicate vertex name")
        known = set(verts)
        normalized = set()
        for e in self.edges:
            pair = tuple(e)
            if len(pair) == 1:
                raise ValidationError(f"self-loop at {pair[0]!r}")
            if len(pair) != 2:
                raise ValidationError(f"malformed edge {e!r}")
            a, b = pair
            if a == b:
                raise ValidationError(f"self-loop at {a!r}")
            for x in pair:
                if x not in known:
                    raise ValidationError(f"edge endpoint {x!r} is not a vertex")
            normalized.add(frozenset(pair))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_lists(cls, vertices: Sequence[str], edges: Iterable[Sequence[str]] = ()):
        """Build from plain lists, rejecting duplicate edges."""
        seen = set()
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise ValidationError(f"malformed edge {e!r}")
            if e[0] == e[1]:
                raise ValidationError(f"self-loop at {e[0]!r}")
            key = frozenset(e)
            if key in seen:
                raise ValidationError(f"duplicate edge {e!r}")
            seen.add(key)
        return cls(tuple(vertices), frozenset(seen))

    # -- lookups -----------------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        """Neighbour index sets, by vertex index."""
        nbrs = [set() for _ in self.vertices]
        for e in self.edges:
            a, b = (self.index[x] for x in e)
            nbrs[a].add(b)
            nbrs[b].add(a)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j in s) for s in self.adj)

    @cached_property
    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as index pairs (i < j), sorted lexicographically."""
        return sorted(tuple(sorted(self.index[x] for x in e)) for e in self.edges)

    def __len__(self):
        return len(self.vertices)

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def degree(self, v: str) -> int:
        return len(self.adj[self.index[v]])

    def neighbors(self, v: str) -> list[str]:
        return [self.vertices[j] for j in sorted(self.adj[self.index[v]])]

    def is_clique_idx(self, idxs: Iterable[int]) -> bool:
        idxs = list(idxs)
        return all(b in self.adj[a] for a, b in itertools.combinations(idxs, 2))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[self.vertices[a], self.vertices[b]] for a, b in self.edge_list],
        }

    def __repr__(self):
        return f"SimplicialGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# -- construction helpers ------------------------------------------------------

def cycle_graph(n: int, prefix: str = "s") -> SimplicialGraph:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return SimplicialGraph.from_lists(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def path_graph(n: int, prefix: str = "s") -> SimplicialGraph:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return SimplicialGraph.from_lists(names, [(names[i], names[i + 1]) for i in range(n - 1)])


def complete_graph(n: int, prefix: str = "s") -> SimplicialGraph:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return SimplicialGraph.from_lists(names, itertools.combinations(names, 2))


def edgeless_graph(names: Sequence[str]) -> SimplicialGraph:
    return SimplicialGraph.from_lists(list(names), [])


def graph_from_dict(obj) -> SimplicialGraph:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise ParseError("graph object needs a 'vertices' list")
    verts = obj["vertices"]
    edges = obj.get("edges", [])
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise ParseError("'vertices' must be a list of strings")
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and all(isinstance(x, str) for x in e) for e in edges
    ):
        raise ParseError("'edges' must be a list of [name, name] pairs")
    return SimplicialGraph.from_lists(verts, edges)


def load_graph(text: str) -> SimplicialGraph:
    """Parse a graph file: ``{"vertices": [...], "edges": [[a, b], ...]}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(obj)


def dump_graph(g: SimplicialGraph) -> str:
    return json.dumps(g.to_dict())


# -- small cycles --------------------------------------------------------------

@dataclass(frozen=True)
class CycleReport:
    has_triangle: bool
    triangle: Optional[tuple[str, str, str]]
    has_simple_4cycle: bool
    simple_4cycle: Optional[tuple[str, str, str, str]]
    has_induced_4cycle: bool
    induced_4cycle: Optional[tuple[str, str, str, str]]

    def to_dict(self) -> dict:
        return {
            "triangle": list(self.triangle) if self.triangle else None,
            "simple_4cycle": list(self.simple_4cycle) if self.simple_4cycle else None,
            "induced_4cycle": list(self.induced_4cycle) if self.induced_4cycle else None,
        }


def _find_triangle(g: SimplicialGraph):
    adj = g.adj
    for a, b in g.edge_list:
        common = adj[a] & adj[b]
        if common:
            return (a, b, min(common))
    return None


def _four_cycles(g: SimplicialGraph):
    """Yield (u, v, w, x) index 4-cycles u-v-w-x-u, one per pair {u, w} with >= 2
    common neighbours.  Pairs are met in order of the first wedge that closes them."""
    adj = g.adj
    seen: dict[tuple[int, int], int] = {}
    for v in range(len(g)):
        for u, w in itertools.combinations(sorted(adj[v]), 2):
            first = seen.get((u, w))
            if first is None:
                seen[(u, w)] = v
            elif first != -1:
                seen[(u, w)] = -1
                yield u, w


def small_cycle_report(g: SimplicialGraph) -> CycleReport:
    names = g.vertices
    adj = g.adj
    tri = _find_triangle(g)

    simple = induced = None
    for u, w in _four_cycles(g):
        common = sorted(adj[u] & adj[w])
        if simple is None:
            simple = (u, common[0], w, common[1])
        if w in adj[u]:
            continue
        for v, x in itertools.combinations(common, 2):
            if x not in adj[v]:
                induced = (u, v, w, x)
                break
        if induced is not None:
            break

    def named(t):
        return tuple(names[i] for i in t) if t is not None else None

    return CycleReport(
        tri is not None, named(tri),
        simple is not None, named(simple),
        induced is not None, named(induced),
    )


# -- cliques and ends ----------------------------------------------------------

def cliques(g: SimplicialGraph) -> tuple[list[frozenset], int]:
    """Maximal cliques (sorted canonically) and the clique number."""
    found = [frozenset(c) for c in nx.find_cliques(g.to_networkx())] if len(g) else []
    found.sort(key=lambda c: (-len(c), sorted(g.index[v] for v in c)))
    return found, max((len(c) for c in found), default=0)


def clique_number(g: SimplicialGraph) -> int:
    return cliques(g)[1]


def is_cone(g: SimplicialGraph) -> tuple[bool, Optional[str]]:
    n = len(g)
    for i, v in enumerate(g.vertices):
        if len(g.adj[i]) == n - 1:
            return True, v
    return False, None


class EndsKind(Enum):
    CLIQUE = "Clique"
    DISCONNECTED = "Disconnected"
    CLIQUE_SEPARATED = "CliqueSeparated"
    ONE_ENDED = "OneEnded"


@dataclass(frozen=True)
class EndsVerdict:
    kind: EndsKind
    witness: Optional[frozenset] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind.value,
                "witness": sorted(self.witness) if self.witness is not None else None}


def _connected_without(g: SimplicialGraph, removed: int) -> tuple[bool, int]:
    """Connectivity of the graph on the vertices outside bitmask `removed`;
    also returns how many vertices remain."""
    n = len(g)
    rest = ((1 << n) - 1) & ~removed
    if rest == 0:
        return True, 0
    start = rest & -rest
    seen = start
    frontier = start
    masks = g.adj_mask
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        nxt &= rest & ~seen
        seen |= nxt
        frontier = nxt
    return seen == rest, bin(rest).count("1")


def one_ended_certificate(g: SimplicialGraph) -> EndsVerdict:
    """Classify by the clique-separator criterion for one-endedness."""
    n = len(g)
    if g.is_clique_idx(range(n)):
        return EndsVerdict(EndsKind.CLIQUE, frozenset(g.vertices))
    if not _connected_without(g, 0)[0]:
        return EndsVerdict(EndsKind.DISCONNECTED)
    cl = [sorted(g.index[v] for v in c) for c in nx.enumerate_all_cliques(g.to_networkx())]
    cl.sort(key=lambda c: (len(c), c))
    for c in cl:
        mask = sum(1 << i for i in c)
        connected, remaining = _connected_without(g, mask)
        if not connected and remaining >= 2:
            return EndsVerdict(EndsKind.CLIQUE_SEPARATED, frozenset(g.vertices[i] for i in c))
    return EndsVerdict(EndsKind.ONE_ENDED)


def induced(g: SimplicialGraph, subset: Iterable[str]) -> SimplicialGraph:
    subset = set(subset)
    for v in subset:
        if v not in g.index:
            raise UnknownVertex(v)
    verts = [v for v in g.vertices if v in subset]
    return SimplicialGraph(tuple(verts), frozenset(e for e in g.edges if e <= subset))


def components(g: SimplicialGraph) -> list[list[str]]:
    comps = nx.connected_components(g.to_networkx())
    out = [sorted(c, key=g.index.__getitem__) for c in comps]
    out.sort(key=lambda c: g.index[c[0]])
    return out
