"""Budgeted completion driver and the verdicts read off a completion."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .cubes import CubeComplex, complex_from_dict, trace, vertex_fullness
from .errors import ParseError
from .graphs import SimplicialGraph, is_cone
from .words import reduce

DEFAULT_MAX_VERTICES = 10_000
DEFAULT_MAX_ROUNDS = 64


@dataclass(frozen=True)
class Budget:
    max_vertices: int = DEFAULT_MAX_VERTICES
    max_rounds: int = DEFAULT_MAX_ROUNDS

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_rounds <= 0:
            raise ValueError("budget limits must be positive")


class CompletionStatus(Enum):
    FINITE = "Finite"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass
class CompletionReport:
    status: CompletionStatus
    complex: CubeComplex
    profile: list = field(default_factory=list)  # (vertices, edges, cubes) per round
    rounds_run: int = 0

    @property
    def finite(self) -> bool:
        return self.status is CompletionStatus.FINITE

    @property
    def vertex_profile(self) -> list[int]:
        return [p[0] for p in self.profile]

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "rounds_run": self.rounds_run,
            "profile": [list(p) for p in self.profile],
            "complex": self.complex.to_dict(),
        }


def report_from_dict(obj) -> CompletionReport:
    try:
        status = CompletionStatus(obj["status"])
        profile = [tuple(p) for p in obj["profile"]]
        rounds = int(obj.get("rounds_run", len(profile) - 1))
        cx = complex_from_dict(obj["complex"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed report: {exc!r}") from exc
    return CompletionReport(status, cx, profile, rounds)


def load_report(text: str) -> CompletionReport:
    try:
        return report_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def dump_report(r: CompletionReport) -> str:
    return json.dumps(r.to_dict(), sort_keys=True)


def complete(cx: CubeComplex, budget: Budget = Budget(), seed: Optional[int] = None) -> CompletionReport:
    """Alternate fold saturation and batched cube attachment until the complex
    is folded and cube-full, or a budget limit trips.

    ``seed`` randomizes the fold and attachment order; without it the
    canonical order is used and runs are reproducible.
    """
    rng = random.Random(seed) if seed is not None else None
    work = cx.copy()
    work._fold_saturate(rng)
    profile = [work.counts()]
    rounds = 0
    while True:
        if work.is_cube_full():
            return CompletionReport(CompletionStatus.FINITE, work, profile, rounds)
        if rounds >= budget.max_rounds or len(work.vertices) > budget.max_vertices:
            return CompletionReport(CompletionStatus.BUDGET_EXHAUSTED, work, profile, rounds)
        work._attach_round(rng)
        work._fold_saturate(rng)
        rounds += 1
        profile.append(work.counts())


def growth_profile(cx: CubeComplex, rounds: int, budget: Budget = Budget()) -> list[int]:
    """Vertex count after the initial fold and after each completion round."""
    b = Budget(budget.max_vertices, min(rounds, budget.max_rounds))
    return complete(cx, b).vertex_profile


# -- verdicts ----------------------------------------------------------------

class Membership(Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    UNKNOWN = "Unknown"


def membership(report: CompletionReport, w: Sequence[str]) -> Membership:
    """Loops persist into the direct limit, so a loop on a partial complex
    already certifies membership; a miss only counts on a finished one."""
    cx = report.complex
    if trace(cx, reduce(w, cx.graph)).is_loop:
        return Membership.MEMBER
    if report.finite:
        return Membership.NON_MEMBER
    return Membership.UNKNOWN


class QCKind(Enum):
    QUASICONVEX = "Quasiconvex"
    EVIDENCE_NON_QC = "EvidenceNonQuasiconvex"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class QCVerdict:
    kind: QCKind
    profile: tuple = ()

    def to_dict(self) -> dict:
        return {"verdict": self.kind.value, "profile": list(self.profile)}


def strictly_growing_tail(vertex_profile: Sequence[int], rounds: int) -> bool:
    window = math.ceil(rounds / 2)
    if rounds <= 0 or window <= 0:
        return False
    tail = list(vertex_profile[-(window + 1):])
    if len(tail) < window + 1:
        return False
    return all(b > a for a, b in zip(tail, tail[1:]))


def quasiconvexity_verdict(report: CompletionReport) -> QCVerdict:
    """Finite completion means quasiconvex.  Sustained growth is reported as
    evidence only: no finite run proves the completion infinite."""
    if report.finite:
        return QCVerdict(QCKind.QUASICONVEX)
    vp = report.vertex_profile
    if strictly_growing_tail(vp, report.rounds_run):
        return QCVerdict(QCKind.EVIDENCE_NON_QC, tuple(vp))
    return QCVerdict(QCKind.INCONCLUSIVE, tuple(vp))


class IndexKind(Enum):
    FINITE_INDEX = "FiniteIndex"
    INFINITE_INDEX = "InfiniteIndex"
    NOT_APPLICABLE = "NotApplicable"
    UNKNOWN = "Unknown"


def finite_index_verdict(report: CompletionReport, g: SimplicialGraph) -> IndexKind:
    if is_cone(g)[0]:
        return IndexKind.NOT_APPLICABLE
    if not report.finite:
        return IndexKind.UNKNOWN
    if vertex_fullness(report.complex):
        return IndexKind.FINITE_INDEX
    return IndexKind.INFINITE_INDEX
