"""Generalization of labeled complexes and subgroups along a partite graph."""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Sequence

from .completion import Budget, Membership, complete, membership
from .cubes import CubeComplex, abstract_edges, based_isomorphic, canonical_cube, fold_saturate, rose
from .errors import BudgetExceeded, LabelOutsideBase, NotAGeneralization, UnknownLetter
from .graphs import SimplicialGraph
from .partite import PartiteGraph


@dataclass(frozen=True)
class Correspondence:
    vertex_map: dict   # generalized vertex -> original vertex
    edge_map: dict     # generalized edge -> original edge

    def to_dict(self) -> dict:
        return {
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "edge_map": {str(k): v for k, v in sorted(self.edge_map.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


def generalize_complex(cx: CubeComplex, p: PartiteGraph) -> tuple[CubeComplex, Correspondence]:
    """Replace every s-labelled edge by one parallel edge per vertex of the part
    over s, and every cube by one cube per clique-spanning choice of labels."""
    base_names = cx.graph.vertices
    for s in base_names:
        if s not in p.decomposition:
            raise LabelOutsideBase(s)
    delta = p.graph
    didx = delta.index
    parts = [[didx[a] for a in p.decomposition[s]] for s in base_names]

    out = CubeComplex(delta)
    for v in sorted(cx.vertices):
        out.add_vertex(v)
    out.base = cx.base
    members: dict[int, dict[int, int]] = {}
    edge_map = {}
    for eid, (u, v, l) in sorted(cx.edges.items()):
        members[eid] = {}
        for a in parts[l]:
            new = out.add_edge(u, v, a)
            members[eid][a] = new
            edge_map[new] = eid

    adj = delta.adj
    for labels, verts, edges in sorted(cx.cube_index):
        d = len(labels)
        ae = abstract_edges(d)
        for choice in itertools.product(*(parts[l] for l in labels)):
            if not all(b in adj[a] for a, b in itertools.combinations(choice, 2)):
                continue
            new_edges = [members[edges[i]][choice[j]] for i, (_, j) in enumerate(ae)]
            cube = (choice, verts, new_edges)
            if canonical_cube(*cube) not in out.cube_index:
                out.add_cube(*cube)
    return out, Correspondence({v: v for v in cx.vertices}, edge_map)


def collapse(cx: CubeComplex, p: PartiteGraph) -> CubeComplex:
    """Collapse each generalized edge back to a single base-labelled edge.

    Only the 1-skeleton is produced.  Vertex ids are preserved.
    """
    part_of = p.part_of
    base = p.base
    groups: dict[tuple, list[int]] = defaultdict(list)
    for eid, (u, v, a) in sorted(cx.edges.items()):
        name = cx.graph.vertices[a]
        if name not in part_of:
            raise NotAGeneralization(f"label {name} is in no part")
        groups[(u, v, part_of[name])].append(eid)

    out = CubeComplex(base)
    for v in sorted(cx.vertices):
        out.add_vertex(v)
    out.base = cx.base
    for (u, v, s), eids in sorted(groups.items(), key=lambda kv: kv[1][0]):
        counts = defaultdict(int)
        for e in eids:
            counts[cx.graph.vertices[cx.edges[e][2]]] += 1
        part = p.decomposition[s]
        mult = {counts.get(a, 0) for a in part}
        if len(mult) != 1 or 0 in mult:
            raise NotAGeneralization(f"edges between {u} and {v} do not realize part {s}")
        for _ in range(mult.pop()):
            out.add_edge(u, v, base.index[s])
    return out


def generalize_generators(words: Sequence[Sequence[str]], g: SimplicialGraph,
                          p: PartiteGraph) -> list[tuple[str, ...]]:
    """Labels of the fundamental loops of the generalized folded rose, relative
    to the breadth-first spanning tree from the base (edges taken in id order).

    Folding first does not change the subgroup but keeps the basis small: a
    word like "t t" folds to a single edge instead of a 2-cycle.
    """
    folded, _ = fold_saturate(rose(words, g))
    gen, _ = generalize_complex(folded, p)
    names = gen.graph.vertices
    parent: dict[int, Optional[int]] = {gen.base: None}
    order = [gen.base]
    for v in order:
        for eid in sorted(e for es in gen.inc[v].values() for e in es):
            w = gen.other_end(eid, v)
            if w not in parent:
                parent[w] = eid
                order.append(w)
    tree = {e for e in parent.values() if e is not None}

    def path_from_base(v):
        labels = []
        while parent[v] is not None:
            e = parent[v]
            labels.append(gen.edges[e][2])
            v = gen.other_end(e, v)
        return labels[::-1]

    out = []
    for eid, (u, v, a) in sorted(gen.edges.items()):
        if eid in tree:
            continue
        loop = path_from_base(u) + [a] + path_from_base(v)[::-1]
        out.append(tuple(names[x] for x in loop))
    return out


def project_word(w: Sequence[str], p: PartiteGraph) -> tuple[str, ...]:
    """Letterwise image under the homomorphism sending each part to its base vertex."""
    part_of = p.part_of
    try:
        return tuple(part_of[a] for a in w)
    except KeyError as exc:
        raise UnknownLetter(exc.args[0]) from None


def commutation_check(words, g: SimplicialGraph, p: PartiteGraph, budget: Budget = Budget(),
                      seed: Optional[int] = None) -> bool:
    """Complete-then-generalize versus generalize-then-complete, compared up to
    based isomorphism.  ``seed`` randomizes the order of the generalized run."""
    r = rose(words, g)
    base_report = complete(r, budget)
    if not base_report.finite:
        raise BudgetExceeded("completion over the base graph did not finish")
    gen_report = complete(generalize_complex(r, p)[0], budget, seed=seed)
    if not gen_report.finite:
        raise BudgetExceeded("completion over the partite graph did not finish")
    y, _ = generalize_complex(base_report.complex, p)
    return based_isomorphic(gen_report.complex, y)


def mutual_membership(words1, words2, g: SimplicialGraph, budget: Budget = Budget()) -> Membership:
    """Whether two generating sets give the same subgroup: MEMBER if each
    generator of one traces a loop in the completion of the other, NON_MEMBER
    if some generator is refuted by a finished completion, else UNKNOWN."""
    verdicts = []
    for src, dst in ((words1, words2), (words2, words1)):
        report = complete(rose(dst, g), budget)
        verdicts.extend(membership(report, w) for w in src)
    if Membership.NON_MEMBER in verdicts:
        return Membership.NON_MEMBER
    if all(v is Membership.MEMBER for v in verdicts):
        return Membership.MEMBER
    return Membership.UNKNOWN
