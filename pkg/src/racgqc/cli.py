"""Command line front end.

Exit codes: 0 success, 1 negative mathematical verdict, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import completion as comp
from .cubes import euler, rose
from .curvature import check_npsc
from .errors import RacgError
from .generalize import commutation_check, generalize_complex, generalize_generators
from .graphs import is_cone, load_graph, one_ended_certificate, small_cycle_report
from .partite import Connector, build_partite, dump_partite, load_partite, surface_generators, verify_partite
from .words import equal, format_word, parse_word, read_word_file, reduce, write_word_file


@dataclass
class CommandResult:
    exit_code: int
    report: str
    output: Optional[str] = None   # machine-readable document


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text: str):
    Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _budget(args) -> comp.Budget:
    return comp.Budget(args.max_vertices, args.max_rounds)


def _add_budget(p):
    p.add_argument("--max-vertices", type=int, default=comp.DEFAULT_MAX_VERTICES)
    p.add_argument("--max-rounds", type=int, default=comp.DEFAULT_MAX_ROUNDS)


# -- subcommands -------------------------------------------------------------

def cmd_graph_check(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    run_all = not (args.cycles or args.ends or args.cone)
    out, lines = {"vertices": len(g), "edges": len(g.edges)}, [f"{len(g)} vertices, {len(g.edges)} edges"]
    if run_all or args.cycles:
        rep = small_cycle_report(g)
        out["cycles"] = rep.to_dict()
        lines.append(f"triangle: {rep.triangle or 'none'}")
        lines.append(f"simple 4-cycle: {rep.simple_4cycle or 'none'}")
        lines.append(f"induced 4-cycle: {rep.induced_4cycle or 'none'}")
    if run_all or args.ends:
        ends = one_ended_certificate(g)
        out["ends"] = ends.to_dict()
        lines.append(f"ends: {ends.kind.value}" + (f" {sorted(ends.witness)}" if ends.witness else ""))
    if run_all or args.cone:
        flag, v = is_cone(g)
        out["cone"] = v
        lines.append(f"cone vertex: {v if flag else 'none'}")
    return CommandResult(0, "\n".join(lines), _dumps(out))


def cmd_word_reduce(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    words = [reduce(w, g) for w in read_word_file(_read(args.wordfile))]
    text = write_word_file(words)
    return CommandResult(0, text[:-1], _dumps({"words": [format_word(w) for w in words]}))


def cmd_word_equal(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    same = equal(parse_word(args.w1), parse_word(args.w2), g)
    return CommandResult(0 if same else 1, "equal" if same else "not equal", _dumps({"equal": same}))


def cmd_partite_build(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    p = build_partite(g, args.k, Connector(args.connectors), force=args.force)
    doc = dump_partite(p)
    if args.output:
        _write(args.output, doc)
    rep = f"built partite graph: k={p.k}, {len(p.graph)} vertices, {len(p.graph.edges)} edges"
    return CommandResult(0, rep, doc)


def cmd_partite_verify(args) -> CommandResult:
    p = load_partite(_read(args.partite))
    v = verify_partite(p)
    rep = "OK" if v.ok else f"violation: {v.violation} {list(v.witness) if v.witness else ''}".rstrip()
    return CommandResult(0 if v.ok else 1, rep, _dumps(v.to_dict()))


def cmd_surface_gens(args) -> CommandResult:
    words = surface_generators(args.two_k)
    if args.output:
        _write(args.output, write_word_file(words))
    return CommandResult(0, write_word_file(words)[:-1],
                         _dumps({"words": [format_word(w) for w in words]}))


def _report_lines(r: comp.CompletionReport) -> list[str]:
    v, e, c = r.complex.counts()
    return [f"status: {r.status.value}", f"rounds: {r.rounds_run}",
            f"final complex: {v} vertices, {e} edges, {c} cubes"]


def cmd_complete(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    words = read_word_file(_read(args.wordfile))
    r = comp.complete(rose(words, g), _budget(args), seed=args.seed)
    doc = comp.dump_report(r)
    if args.output:
        _write(args.output, doc)
    return CommandResult(0, "\n".join(_report_lines(r)), doc)


def cmd_member(args) -> CommandResult:
    r = comp.load_report(_read(args.report))
    m = comp.membership(r, parse_word(args.word))
    return CommandResult(1 if m is comp.Membership.NON_MEMBER else 0, m.value, _dumps({"membership": m.value}))


def cmd_qc_verdict(args) -> CommandResult:
    r = comp.load_report(_read(args.report))
    v = comp.quasiconvexity_verdict(r)
    code = 1 if v.kind is comp.QCKind.EVIDENCE_NON_QC else 0
    rep = v.kind.value
    if v.kind is comp.QCKind.EVIDENCE_NON_QC:
        rep += f" (vertex profile tail {list(v.profile[-5:])}; evidence, not proof)"
    return CommandResult(code, rep, _dumps(v.to_dict()))


def cmd_index_verdict(args) -> CommandResult:
    r = comp.load_report(_read(args.report))
    g = load_graph(_read(args.graph))
    v = comp.finite_index_verdict(r, g)
    out = {"verdict": v.value}
    rep = v.value
    if r.finite:
        out["euler"] = euler(r)
        out["vertices"] = len(r.complex.vertices)
        rep += f" (completion has {len(r.complex.vertices)} vertices, euler {out['euler']})"
    return CommandResult(1 if v is comp.IndexKind.INFINITE_INDEX else 0, rep, _dumps(out))


def cmd_generalize(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    words = read_word_file(_read(args.wordfile))
    p = load_partite(_read(args.partite))
    gens = generalize_generators(words, g, p)
    if args.generators_only:
        out = {"generators": [format_word(w) for w in gens]}
        rep = f"{len(gens)} generators"
    else:
        cx, corr = generalize_complex(rose(words, g), p)
        out = {"generators": [format_word(w) for w in gens], "complex": cx.to_dict(),
               "correspondence": corr.to_dict()}
        v, e, c = cx.counts()
        rep = f"generalized rose: {v} vertices, {e} edges; {len(gens)} generators"
    doc = _dumps(out)
    if args.output:
        _write(args.output, doc)
    return CommandResult(0, rep, doc)


def cmd_commute_check(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    words = read_word_file(_read(args.wordfile))
    p = load_partite(_read(args.partite))
    ok = commutation_check(words, g, p, _budget(args), seed=args.seed)
    return CommandResult(0 if ok else 1, "isomorphic" if ok else "NOT isomorphic",
                         _dumps({"isomorphic": ok}))


def cmd_curvature_check(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    if args.samples and args.seed is None:
        raise UsageError("--samples requires --seed")
    v = check_npsc(g, args.bound, args.samples or 0, args.seed)
    rep = v.label
    if v.witness is not None:
        w = v.witness.to_dict()
        rep += f": vertices {w['vertices']}, kappa={w['kappa']}"
    return CommandResult(0 if v.nonpositive else 1, rep, _dumps(v.to_dict()))


def cmd_pipeline_nonqc(args) -> CommandResult:
    g = load_graph(_read(args.graph))
    words = read_word_file(_read(args.wordfile))
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    budget = _budget(args)

    p = build_partite(g, args.k, Connector(args.connectors), force=args.force)
    cycles = small_cycle_report(p.graph)
    gens = generalize_generators(words, g, p)
    base = comp.complete(rose(words, g), budget)
    gen = comp.complete(rose(gens, p.graph), budget)
    vb = comp.quasiconvexity_verdict(base)
    vg = comp.quasiconvexity_verdict(gen)

    _write(out_dir / "partite.json", dump_partite(p))
    _write(out_dir / "generators.txt", write_word_file(gens))
    _write(out_dir / "base_report.json", comp.dump_report(base))
    _write(out_dir / "generalized_report.json", comp.dump_report(gen))
    summary = {
        "k": p.k,
        "partite_vertices": len(p.graph),
        "partite_edges": len(p.graph.edges),
        "cycles": cycles.to_dict(),
        "generators": len(gens),
        "base": {"status": base.status.value, "verdict": vb.kind.value, "profile": base.vertex_profile},
        "generalized": {"status": gen.status.value, "verdict": vg.kind.value, "profile": gen.vertex_profile},
        "transfer_consistent": vb.kind == vg.kind,
    }
    _write(out_dir / "summary.json", _dumps(summary))
    lines = [
        f"partite graph: k={p.k}, {len(p.graph)} vertices, {len(p.graph.edges)} edges, "
        f"triangle={'yes' if cycles.has_triangle else 'no'}, "
        f"induced 4-cycle={'yes' if cycles.has_induced_4cycle else 'no'}",
        f"generalized generators: {len(gens)}",
        f"base verdict: {vb.kind.value}",
        f"generalized verdict: {vg.kind.value}",
    ]
    return CommandResult(0 if vb.kind == vg.kind else 1, "\n".join(lines), _dumps(summary))


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="racgqc", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=["json"], help="print the machine-readable document instead of text")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    graph = sub.add_parser("graph").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = graph.add_parser("check")
    p.add_argument("graph")
    p.add_argument("--cycles", action="store_true")
    p.add_argument("--ends", action="store_true")
    p.add_argument("--cone", action="store_true")
    p.set_defaults(func=cmd_graph_check)

    word = sub.add_parser("word").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = word.add_parser("reduce")
    p.add_argument("graph")
    p.add_argument("wordfile")
    p.set_defaults(func=cmd_word_reduce)
    p = word.add_parser("equal")
    p.add_argument("graph")
    p.add_argument("w1")
    p.add_argument("w2")
    p.set_defaults(func=cmd_word_equal)

    part = sub.add_parser("partite").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = part.add_parser("build")
    p.add_argument("graph")
    p.add_argument("--k", type=int)
    p.add_argument("--connectors", choices=["cycle", "path"], default="cycle")
    p.add_argument("--force", action="store_true", help="allow k below the square-free bound")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_partite_build)
    p = part.add_parser("verify")
    p.add_argument("partite")
    p.set_defaults(func=cmd_partite_verify)

    p = sub.add_parser("surface-gens")
    p.add_argument("--two-k", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_surface_gens)

    p = sub.add_parser("complete")
    p.add_argument("graph")
    p.add_argument("wordfile")
    _add_budget(p)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("member")
    p.add_argument("report")
    p.add_argument("word")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("qc-verdict")
    p.add_argument("report")
    p.set_defaults(func=cmd_qc_verdict)

    p = sub.add_parser("index-verdict")
    p.add_argument("report")
    p.add_argument("graph")
    p.set_defaults(func=cmd_index_verdict)

    p = sub.add_parser("generalize")
    p.add_argument("graph")
    p.add_argument("wordfile")
    p.add_argument("partite")
    p.add_argument("--generators-only", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generalize)

    p = sub.add_parser("commute-check")
    p.add_argument("graph")
    p.add_argument("wordfile")
    p.add_argument("partite")
    _add_budget(p)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_commute_check)

    curv = sub.add_parser("curvature").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = curv.add_parser("check")
    p.add_argument("graph")
    p.add_argument("--bound", type=int)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_curvature_check)

    pipe = sub.add_parser("pipeline").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = pipe.add_parser("nonqc")
    p.add_argument("graph")
    p.add_argument("wordfile")
    p.add_argument("--k", type=int)
    p.add_argument("--connectors", choices=["cycle", "path"], default="cycle")
    p.add_argument("--force", action="store_true")
    _add_budget(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_pipeline_nonqc)
    return ap


def run(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        return CommandResult(2, f"error: {exc}")
    except (RacgError, ValueError) as exc:
        return CommandResult(2, f"error: {type(exc).__name__}: {exc}")
    if getattr(args, "format", None) == "json" and result.output is not None:
        result.report = result.output
    return result


def main(argv=None):
    result = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if result.exit_code != 2 else sys.stderr
    if result.report:
        print(result.report, file=stream)
    return result.exit_code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
