"""Graph-labeled cube complexes and the fold / identify / attach operations.

Cubes are stored through corner maps.  For a d-cube the abstract corners are
the integers ``0 .. 2**d - 1`` (bit j = coordinate in direction j) and the
abstract edges are the pairs ``(c, j)`` with bit j of c clear, listed by
direction and then corner.  A stored cube is a triple
``(labels, vertex images, edge images)`` with directions sorted by label index
and the reflection ambiguity removed by taking the least representative, so
two cubes have a common boundary exactly when their stored triples are equal.

Vertex and edge ids are allocation-ordered integers; merges keep the smaller
vertex id.
"""
from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import EmptyWord, InfiniteComplex, NotFolded, ParseError, UnknownLetter, ValidationError
from .graphs import SimplicialGraph, clique_number, graph_from_dict
from .words import encode

Cube = tuple  # (labels, verts, edges), each a tuple of ints


# -- abstract cube combinatorics ------------------------------------------------

@lru_cache(maxsize=None)
def abstract_edges(d: int) -> tuple[tuple[int, int], ...]:
    return tuple((c, j) for j in range(d) for c in range(1 << d) if not (c >> j) & 1)


@lru_cache(maxsize=None)
def _edge_slot(d: int) -> dict:
    return {ae: i for i, ae in enumerate(abstract_edges(d))}


@lru_cache(maxsize=None)
def _symmetry_tables(d: int, perm: tuple[int, ...]):
    """Index maps for every reflection r, after relabelling new direction j' as
    old direction perm[j'].  Returns [(corner_src, edge_src)] per r."""
    slot = _edge_slot(d)
    out = []
    for r in range(1 << d):
        corner_src = []
        for c in range(1 << d):
            old = 0
            for jn in range(d):
                if (c >> jn) & 1:
                    old |= 1 << perm[jn]
            corner_src.append(old ^ r)
        edge_src = []
        for c, jn in abstract_edges(d):
            a = corner_src[c]
            j = perm[jn]
            edge_src.append(slot[(a & ~(1 << j), j)])
        out.append((tuple(corner_src), tuple(edge_src)))
    return out


def canonical_cube(labels: Sequence[int], verts: Sequence[int], edges: Sequence[int]) -> Cube:
    d = len(labels)
    perm = tuple(sorted(range(d), key=lambda j: labels[j]))
    best = None
    for corner_src, edge_src in _symmetry_tables(d, perm):
        cand = (tuple(verts[i] for i in corner_src), tuple(edges[i] for i in edge_src))
        if best is None or cand < best:
            best = cand
    return (tuple(labels[j] for j in perm),) + best


def corner_edges(cube: Cube, c: int) -> tuple[int, ...]:
    """Edge images at corner c, in direction order."""
    labels, _, edges = cube
    slot = _edge_slot(len(labels))
    return tuple(edges[slot[(c & ~(1 << j), j)]] for j in range(len(labels)))


def faces(cube: Cube, min_dim: int = 2):
    """All proper faces of dimension >= min_dim, as (labels, verts, edges)."""
    labels, verts, edges = cube
    d = len(labels)
    slot = _edge_slot(d)
    for k in range(min_dim, d):
        for dirs in itertools.combinations(range(d), k):
            others = [j for j in range(d) if j not in dirs]
            for fixed_bits in range(1 << len(others)):
                base = 0
                for t, j in enumerate(others):
                    if (fixed_bits >> t) & 1:
                        base |= 1 << j

                def old(c):
                    o = base
                    for t, j in enumerate(dirs):
                        if (c >> t) & 1:
                            o |= 1 << j
                    return o

                fverts = tuple(verts[old(c)] for c in range(1 << k))
                fedges = tuple(edges[slot[(old(c), dirs[t])]] for c, t in abstract_edges(k))
                yield tuple(labels[j] for j in dirs), fverts, fedges


# -- result types -------------------------------------------------------------

@dataclass(frozen=True)
class TraceResult:
    kind: str  # "Loop" | "PathEndsAt" | "Stuck"
    vertex: Optional[int] = None
    position: Optional[int] = None

    @property
    def is_loop(self) -> bool:
        return self.kind == "Loop"


@dataclass(frozen=True)
class Status:
    folded: bool
    cube_full: bool


# -- the complex ----------------------------------------------------------------

class CubeComplex:
    """A based cube complex whose edges are labelled by vertices of ``graph``.

    Public operations (:func:`fold_saturate`, :func:`attach_round`, ...) treat
    complexes as values and work on copies; the underscored methods mutate.
    """

    def __init__(self, graph: SimplicialGraph):
        self.graph = graph
        self.base = 0
        self.vertices: set[int] = set()
        self.edges: dict[int, tuple[int, int, int]] = {}
        self.inc: dict[int, dict[int, set[int]]] = {}
        self.cubes: dict[int, Cube] = {}
        self.cube_index: dict[Cube, set[int]] = {}
        self.vert_cubes: dict[int, set[int]] = {}
        self.edge_cubes: dict[int, set[int]] = {}
        self._next_v = 0
        self._next_e = 0
        self._next_c = 0

    # -- construction primitives

    def add_vertex(self, vid: Optional[int] = None) -> int:
        if vid is None:
            vid = self._next_v
        if vid in self.vertices:
            raise ValidationError(f"duplicate vertex id {vid}")
        self._next_v = max(self._next_v, vid + 1)
        self.vertices.add(vid)
        self.inc[vid] = {}
        return vid

    def add_edge(self, u: int, v: int, label: int, eid: Optional[int] = None) -> int:
        if eid is None:
            eid = self._next_e
        if eid in self.edges:
            raise ValidationError(f"duplicate edge id {eid}")
        if u not in self.vertices or v not in self.vertices:
            raise ValidationError(f"edge {eid} has an endpoint that is not a vertex")
        if not 0 <= label < len(self.graph):
            raise ValidationError(f"edge label {label} outside the defining graph")
        self._next_e = max(self._next_e, eid + 1)
        if u > v:
            u, v = v, u
        self.edges[eid] = (u, v, label)
        self.inc[u].setdefault(label, set()).add(eid)
        self.inc[v].setdefault(label, set()).add(eid)
        return eid

    def add_cube(self, labels: Sequence[int], verts: Sequence[int], edges: Sequence[int]) -> int:
        cube = canonical_cube(labels, verts, edges)
        cid = self._next_c
        self._next_c += 1
        self._register(cid, cube)
        return cid

    def _register(self, cid: int, cube: Cube):
        self.cubes[cid] = cube
        self.cube_index.setdefault(cube, set()).add(cid)
        for v in set(cube[1]):
            self.vert_cubes.setdefault(v, set()).add(cid)
        for e in set(cube[2]):
            self.edge_cubes.setdefault(e, set()).add(cid)

    def _unregister(self, cid: int) -> Cube:
        cube = self.cubes.pop(cid)
        bucket = self.cube_index[cube]
        bucket.discard(cid)
        if not bucket:
            del self.cube_index[cube]
        for v in set(cube[1]):
            s = self.vert_cubes.get(v)
            if s is not None:
                s.discard(cid)
        for e in set(cube[2]):
            s = self.edge_cubes.get(e)
            if s is not None:
                s.discard(cid)
        return cube

    def copy(self) -> "CubeComplex":
        c = CubeComplex(self.graph)
        c.base = self.base
        c.vertices = set(self.vertices)
        c.edges = dict(self.edges)
        c.inc = {v: {l: set(es) for l, es in d.items()} for v, d in self.inc.items()}
        c.cubes = dict(self.cubes)
        c.cube_index = {k: set(v) for k, v in self.cube_index.items()}
        c.vert_cubes = {k: set(v) for k, v in self.vert_cubes.items()}
        c.edge_cubes = {k: set(v) for k, v in self.edge_cubes.items()}
        c._next_v, c._next_e, c._next_c = self._next_v, self._next_e, self._next_c
        return c

    # -- queries

    def other_end(self, eid: int, v: int) -> int:
        a, b, _ = self.edges[eid]
        return b if a == v else a

    def label_name(self, label: int) -> str:
        return self.graph.vertices[label]

    def edge_at(self, v: int, label: int) -> Optional[int]:
        es = self.inc[v].get(label)
        if not es:
            return None
        return min(es)

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.cubes)

    def cubes_of_dim(self, d: int) -> list[Cube]:
        return [c for c in self.cubes.values() if len(c[0]) == d]

    def is_folded(self) -> bool:
        for d in self.inc.values():
            for es in d.values():
                if len(es) > 1:
                    return False
        return all(len(s) == 1 for s in self.cube_index.values())

    def require_folded(self):
        if not self.is_folded():
            raise NotFolded("operation needs a folded complex")

    def covered_corners(self) -> set:
        out = set()
        for cube in self.cubes.values():
            for c in range(1 << len(cube[0])):
                out.add((cube[1][c], frozenset(corner_edges(cube, c))))
        return out

    def clique_sites(self, v: int):
        """Yield (labels, edge-tuple) for every set of >= 2 edges at v with
        distinct labels forming a clique of the defining graph."""
        adj = self.graph.adj
        present = sorted(l for l, es in self.inc[v].items() if es)

        def extend(clique, candidates):
            for i, l in enumerate(candidates):
                cl = clique + (l,)
                if len(cl) >= 2:
                    yield cl
                nxt = [m for m in candidates[i + 1:] if m in adj[l]]
                if nxt:
                    yield from extend(cl, nxt)

        for cl in extend((), present):
            for es in itertools.product(*(sorted(self.inc[v][l]) for l in cl)):
                yield cl, es

    def is_cube_full(self) -> bool:
        covered = self.covered_corners()
        for v in self.vertices:
            for _, es in self.clique_sites(v):
                if (v, frozenset(es)) not in covered:
                    return False
        return True

    def status(self) -> Status:
        return Status(self.is_folded(), self.is_cube_full())

    # -- mutation: folding

    def _rewrite(self, cid: int, vsub: dict, esub: dict) -> bool:
        """Re-express cube cid after id substitutions; returns True when the
        rewritten cube coincides with an existing one (and is dropped)."""
        labels, verts, edges = self._unregister(cid)
        new = canonical_cube(
            labels,
            [vsub.get(v, v) for v in verts],
            [esub.get(e, e) for e in edges],
        )
        if self.cube_index.get(new):
            return True
        self._register(cid, new)
        return False

    def _merge_vertices(self, keep: int, drop: int) -> int:
        idents = 0
        for label, es in self.inc.pop(drop).items():
            target = self.inc[keep].setdefault(label, set())
            for eid in es:
                a, b, l = self.edges[eid]
                a = keep if a == drop else a
                b = keep if b == drop else b
                self.edges[eid] = (min(a, b), max(a, b), l)
                target.add(eid)
        self.vertices.discard(drop)
        if self.base == drop:
            self.base = keep
        for cid in sorted(self.vert_cubes.pop(drop, ())):
            if cid in self.cubes and self._rewrite(cid, {drop: keep}, {}):
                idents += 1
        return idents

    def _fold_pair(self, v: int, keep_e: int, drop_e: int) -> tuple[int, Optional[int]]:
        """Identify edge drop_e with keep_e (same label, both at v).  Returns the
        number of cube identifications and the surviving merged vertex, if any."""
        x = self.other_end(keep_e, v)
        y = self.other_end(drop_e, v)
        a, b, label = self.edges.pop(drop_e)
        self.inc[a][label].discard(drop_e)
        self.inc[b][label].discard(drop_e)
        idents = 0
        for cid in sorted(self.edge_cubes.pop(drop_e, ())):
            if cid in self.cubes and self._rewrite(cid, {}, {drop_e: keep_e}):
                idents += 1
        merged = None
        if x != y:
            keep, drop = min(x, y), max(x, y)
            idents += self._merge_vertices(keep, drop)
            merged = keep
        return idents, merged

    def _identify_duplicate_cubes(self) -> int:
        n = 0
        for key in [k for k, s in self.cube_index.items() if len(s) > 1]:
            cids = sorted(self.cube_index[key])
            for cid in cids[1:]:
                self._unregister(cid)
                n += 1
        return n

    def _fold_saturate(self, rng=None) -> int:
        count = self._identify_duplicate_cubes()
        if rng is None:
            heap = sorted(self.vertices)
            pending = None
        else:
            pending = set(self.vertices)
        while True:
            if rng is None:
                if not heap:
                    break
                v = heapq.heappop(heap)
            else:
                if not pending:
                    break
                v = rng.choice(sorted(pending))
                pending.discard(v)
            if v not in self.vertices:
                continue
            multi = sorted(l for l, es in self.inc[v].items() if len(es) > 1)
            if not multi:
                continue
            if rng is None:
                label = multi[0]
                e, f = sorted(self.inc[v][label])[:2]
            else:
                label = rng.choice(multi)
                e, f = sorted(rng.sample(sorted(self.inc[v][label]), 2))
            idents, merged = self._fold_pair(v, e, f)
            count += 1 + idents
            for w in {v, merged}:
                if w is None or w not in self.vertices:
                    continue
                if rng is None:
                    heapq.heappush(heap, w)
                else:
                    pending.add(w)
        return count

    # -- mutation: cube attachment

    def _attach_at(self, v: int, labels: Sequence[int], es: Sequence[int]):
        d = len(labels)
        verts = [None] * (1 << d)
        verts[0] = v
        for j, e in enumerate(es):
            verts[1 << j] = self.other_end(e, v)
        for c in range(1 << d):
            if verts[c] is None:
                verts[c] = self.add_vertex()
        edges = []
        for c, j in abstract_edges(d):
            if c == 0:
                edges.append(es[j])
            else:
                edges.append(self.add_edge(verts[c], verts[c | (1 << j)], labels[j]))
        cube = (tuple(labels), tuple(verts), tuple(edges))
        self.add_cube(*cube)
        for face in faces(cube):
            self.add_cube(*face)

    def _attach_round(self, rng=None) -> int:
        covered = self.covered_corners()
        sites = []
        for v in sorted(self.vertices):
            for labels, es in self.clique_sites(v):
                sites.append((v, labels, es))
        sites.sort(key=lambda s: (s[0], len(s[1]), s[1]))
        if rng is not None:
            rng.shuffle(sites)
        served = set()
        n = 0
        for v, labels, es in sites:
            key = frozenset(es)
            if (v, key) in covered or key in served:
                continue
            served.add(key)
            self._attach_at(v, labels, es)
            n += 1
        return n

    # -- serialization

    def to_dict(self) -> dict:
        names = self.graph.vertices
        slot2 = abstract_edges(2)
        cyc = [slot2.index(ae) for ae in ((0, 0), (1, 1), (2, 0), (0, 1))]
        cubes = sorted(self.cubes.values(), key=lambda c: (len(c[0]), c))
        return {
            "graph": self.graph.to_dict(),
            "base": self.base,
            "vertices": sorted(self.vertices),
            "edges": [
                {"id": eid, "u": u, "v": v, "label": names[l]}
                for eid, (u, v, l) in sorted(self.edges.items())
            ],
            "squares": [[c[2][i] for i in cyc] for c in cubes if len(c[0]) == 2],
            "cubes": [
                {"labels": [names[l] for l in c[0]], "vertices": list(c[1]), "edges": list(c[2])}
                for c in cubes
            ],
        }

    def __repr__(self):
        v, e, c = self.counts()
        return f"CubeComplex({v} vertices, {e} edges, {c} cubes, base={self.base})"


def complex_from_dict(obj, graph: Optional[SimplicialGraph] = None) -> CubeComplex:
    try:
        if graph is None:
            graph = graph_from_dict(obj["graph"])
        cx = CubeComplex(graph)
        for vid in obj["vertices"]:
            cx.add_vertex(int(vid))
        idx = graph.index
        for rec in obj["edges"]:
            if rec["label"] not in idx:
                raise UnknownLetter(rec["label"])
            cx.add_edge(int(rec["u"]), int(rec["v"]), idx[rec["label"]], int(rec["id"]))
        cx.base = int(obj["base"])
        cubes = obj.get("cubes") or []
        if cubes:
            for rec in cubes:
                labels = [idx[l] for l in rec["labels"]]
                _check_cube(cx, labels, rec["vertices"], rec["edges"])
                cx.add_cube(labels, [int(x) for x in rec["vertices"]], [int(x) for x in rec["edges"]])
        else:
            for sq in obj.get("squares") or []:
                cx.add_cube(*_square_from_cycle(cx, [int(x) for x in sq]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed complex: {exc!r}") from exc
    if cx.base not in cx.vertices:
        raise ValidationError("base is not a vertex")
    return cx


def _check_cube(cx: CubeComplex, labels, verts, edges):
    d = len(labels)
    if len(verts) != 1 << d or len(edges) != d << (d - 1):
        raise ValidationError("cube record has the wrong number of corners or edges")
    if len(set(labels)) != d or not cx.graph.is_clique_idx(labels):
        raise ValidationError("cube labels must form a clique")
    for (c, j), e in zip(abstract_edges(d), edges):
        if e not in cx.edges:
            raise ValidationError(f"cube refers to unknown edge {e}")
        a, b, l = cx.edges[e]
        if l != labels[j] or {a, b} != {verts[c], verts[c | (1 << j)]}:
            raise ValidationError(f"cube corner map inconsistent at edge {e}")


def _square_from_cycle(cx: CubeComplex, sq: list[int]):
    """Recover a corner map from 4 edge ids in cyclic order (00-10-11-01)."""
    e0, e1, e2, e3 = sq
    l0 = cx.edges[e0][2]
    l1 = cx.edges[e1][2]
    for v0 in cx.edges[e0][:2]:
        v1 = cx.other_end(e0, v0)
        if v1 not in cx.edges[e1][:2]:
            continue
        v2 = cx.other_end(e1, v1)
        if v2 not in cx.edges[e2][:2]:
            continue
        v3 = cx.other_end(e2, v2)
        if v0 in cx.edges[e3][:2] and cx.other_end(e3, v3) == v0:
            # corners 0,1,3,2 = v0,v1,v2,v3; slots (0,0),(2,0),(0,1),(1,1)
            return (l0, l1), (v0, v1, v3, v2), (e0, e2, e3, e1)
    raise ValidationError(f"square {sq} is not a closed 4-cycle")


def load_complex(text: str) -> CubeComplex:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return complex_from_dict(obj)


def dump_complex(cx: CubeComplex) -> str:
    return json.dumps(cx.to_dict(), sort_keys=True)


# -- public operations ------------------------------------------------------------

def rose(words: Iterable[Sequence[str]], g: SimplicialGraph) -> CubeComplex:
    """One base vertex with a labelled cycle per word."""
    cx = CubeComplex(g)
    base = cx.add_vertex()
    for w in words:
        code = encode(w, g)
        if not code:
            raise EmptyWord("rose words must be nonempty")
        prev = base
        for i, label in enumerate(code):
            nxt = base if i == len(code) - 1 else cx.add_vertex()
            cx.add_edge(prev, nxt, label)
            prev = nxt
    return cx


def fold_saturate(cx: CubeComplex, rng=None) -> tuple[CubeComplex, int]:
    out = cx.copy()
    n = out._fold_saturate(rng)
    return out, n


def attach_round(cx: CubeComplex, rng=None) -> tuple[CubeComplex, int]:
    cx.require_folded()
    out = cx.copy()
    n = out._attach_round(rng)
    return out, n


def status(cx: CubeComplex) -> Status:
    return cx.status()


def trace(cx: CubeComplex, w: Sequence[str]) -> TraceResult:
    cx.require_folded()
    v = cx.base
    for pos, label in enumerate(encode(w, cx.graph)):
        e = cx.edge_at(v, label)
        if e is None:
            return TraceResult("Stuck", vertex=v, position=pos)
        v = cx.other_end(e, v)
    if v == cx.base:
        return TraceResult("Loop", vertex=v)
    return TraceResult("PathEndsAt", vertex=v)


def torsion_scan(cx: CubeComplex) -> Optional[tuple[int, tuple[str, ...]]]:
    """First closed walk whose labels are distinct and span a clique."""
    cx.require_folded()
    g = cx.graph
    adj = g.adj
    max_len = clique_number(g)
    for v in sorted(cx.vertices):
        layer = [(v, ())]
        for _ in range(max_len):
            nxt = []
            for u, labels in layer:
                for l in sorted(cx.inc[u]):
                    if not cx.inc[u][l] or l in labels or not all(l in adj[m] for m in labels):
                        continue
                    w = cx.other_end(cx.edge_at(u, l), u)
                    nxt.append((w, labels + (l,)))
            for w, labels in nxt:
                if w == v:
                    return v, tuple(g.vertices[l] for l in labels)
            layer = nxt
    return None


def vertex_fullness(cx: CubeComplex) -> bool:
    cx.require_folded()
    n = len(cx.graph)
    return all(sum(1 for es in cx.inc[v].values() if es) == n for v in cx.vertices)


def euler(cx) -> int:
    """Alternating cell count.  Accepts a complex or a completion report; a
    report that did not reach a fixed point raises InfiniteComplex."""
    if hasattr(cx, "complex"):
        if not cx.finite:
            raise InfiniteComplex("completion did not terminate; Euler characteristic undefined")
        cx = cx.complex
    chi = len(cx.vertices) - len(cx.edges)
    for cube in cx.cubes.values():
        chi += (-1) ** len(cube[0])
    return chi


def based_isomorphic(a: CubeComplex, b: CubeComplex) -> bool:
    """Label- and base-preserving isomorphism test for folded complexes."""
    a.require_folded()
    b.require_folded()
    if a.graph.vertices != b.graph.vertices or a.counts() != b.counts():
        return False
    vmap = {a.base: b.base}
    rev = {b.base: a.base}
    emap: dict[int, int] = {}
    queue = [a.base]
    while queue:
        p = queue.pop()
        q = vmap[p]
        la = {l for l, es in a.inc[p].items() if es}
        lb = {l for l, es in b.inc[q].items() if es}
        if la != lb:
            return False
        for l in la:
            ea, eb = a.edge_at(p, l), b.edge_at(q, l)
            if emap.setdefault(ea, eb) != eb:
                return False
            pa, qb = a.other_end(ea, p), b.other_end(eb, q)
            if pa in vmap:
                if vmap[pa] != qb:
                    return False
            else:
                if qb in rev:
                    return False
                vmap[pa] = qb
                rev[qb] = pa
                queue.append(pa)
    if len(vmap) != len(a.vertices) or len(emap) != len(a.edges):
        return False
    mapped = {
        canonical_cube(c[0], [vmap[v] for v in c[1]], [emap[e] for e in c[2]])
        for c in a.cubes.values()
    }
    return mapped == set(b.cube_index)
