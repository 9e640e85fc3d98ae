"""Sectional curvature of graphs.

Sections are enumerated as vertex subsets: on a fixed vertex set the induced
subgraph has the most edges, so it has the largest curvature and is still
connected and spurless whenever any subgraph on that set is.  Checking
induced subgraphs therefore decides whether every section has curvature <= 0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .graphs import SimplicialGraph


def kappa(theta: SimplicialGraph) -> Fraction:
    return Fraction(2 - len(theta.vertices)) + Fraction(len(theta.edges), 2)


def kappa_counts(num_vertices: int, num_edges: int) -> Fraction:
    return Fraction(2 - num_vertices) + Fraction(num_edges, 2)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SectionWitness:
    vertices: tuple[str, ...]
    kappa: Fraction

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "kappa": format_fraction(self.kappa)}


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _connected_sets(adj: tuple[int, ...], size: int) -> Iterator[int]:
    """Every connected vertex set of exactly ``size`` vertices, once each
    (ESU enumeration rooted at the smallest member)."""
    n = len(adj)

    def extend(sub: int, ext: int, border: int, root: int, count: int):
        if count == size:
            yield sub
            return
        while ext:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            fresh = adj[w] & ~sub & ~border & ~((1 << (root + 1)) - 1)
            yield from extend(sub | low, ext | fresh, border | adj[w], root, count + 1)

    for v in range(n):
        higher = adj[v] & ~((1 << (v + 1)) - 1)
        yield from extend(1 << v, higher, adj[v] | (1 << v), v, 1)


def _section_info(adj: tuple[int, ...], mask: int) -> Optional[tuple[int, int]]:
    """(vertices, edges) of the induced subgraph on mask if it is spurless with
    an edge; None otherwise.  Connectivity is assumed."""
    deg_sum = 0
    members = _bits(mask)
    for v in members:
        d = bin(adj[v] & mask).count("1")
        if d < 2:
            return None
        deg_sum += d
    return len(members), deg_sum // 2


def sections(g: SimplicialGraph, max_vertices: int) -> Iterator[SectionWitness]:
    """Connected, spurless induced subgraphs with an edge and at most
    ``max_vertices`` vertices, by size and then by sorted vertex indices."""
    if max_vertices < 2:
        raise ValueError("bound must be at least 2")
    adj = g.adj_mask
    names = g.vertices
    for size in range(2, min(max_vertices, len(g)) + 1):
        batch = []
        for mask in _connected_sets(adj, size):
            info = _section_info(adj, mask)
            if info is not None:
                batch.append((_bits(mask), info))
        batch.sort()
        for members, (nv, ne) in batch:
            yield SectionWitness(tuple(names[i] for i in members), kappa_counts(nv, ne))


@dataclass(frozen=True)
class NpscVerdict:
    nonpositive: bool
    bound: int
    witness: Optional[SectionWitness] = None
    sampled: int = 0

    @property
    def label(self) -> str:
        return f"NonpositiveUpTo({self.bound})" if self.nonpositive else "Violation"

    def to_dict(self) -> dict:
        d = {"verdict": "NonpositiveUpTo" if self.nonpositive else "Violation", "bound": self.bound}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.sampled:
            d["sampled"] = self.sampled
        return d


def check_npsc(g: SimplicialGraph, bound: Optional[int] = None, samples: int = 0,
               seed: Optional[int] = None) -> NpscVerdict:
    """Exhaustive search for a section of positive curvature with at most
    ``bound`` vertices; the first one in canonical order is returned.

    With ``samples`` > 0 and an explicit ``seed``, random connected sets larger
    than the bound are also tried.  The verdict still only certifies the
    exhaustive range.
    """
    if bound is None:
        bound = len(g)
    bound = max(2, bound)
    for w in sections(g, bound):
        if w.kappa > 0:
            return NpscVerdict(False, bound, w)
    if samples:
        if seed is None:
            raise ValueError("sampling needs an explicit seed")
        hit = _sample_violation(g, bound, samples, random.Random(seed))
        if hit is not None:
            return NpscVerdict(False, bound, hit, samples)
        return NpscVerdict(True, bound, None, samples)
    return NpscVerdict(True, bound)


def _sample_violation(g: SimplicialGraph, bound: int, samples: int, rng: random.Random):
    adj = g.adj_mask
    n = len(g)
    if n <= bound:
        return None
    for _ in range(samples):
        size = rng.randint(bound + 1, n)
        mask = 1 << rng.randrange(n)
        for _ in range(size - 1):
            border = 0
            for v in _bits(mask):
                border |= adj[v]
            border &= ~mask
            if not border:
                break
            mask |= 1 << rng.choice(_bits(border))
        info = _section_info(adj, mask)
        if info is not None and kappa_counts(*info) > 0:
            return SectionWitness(tuple(g.vertices[i] for i in _bits(mask)), kappa_counts(*info))
    return None
