"""The ``chroma`` command.

Exit codes: 0 for a positive answer (colorable, member at t0, label 'in',
compile bound met), 1 for a negative one, 2 for any error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .coloring import GraphError, decide_colorable, parse_graph
from .field import FieldCtx, parse_field
from .pipeline import full_pipeline, render_report
from .slp import dump_slp
from .tree import EvaluationError, TreeError, evaluate, parse_tree
from .witness import MODES, conjecture_scan, graph_line, membership_via_roots

WITNESS_SCHEMA = "chroma-witness-report 1"

EXIT_CODES = """exit codes:
  0  positive answer (colorable / member at t0 / label in / bound holds)
  1  negative answer
  2  error (bad field, unreadable or malformed input, size mismatch)

CHROMA_THREADS caps the worker processes used to scan colour maps."""


@dataclass
class RunConfig:
    field: FieldCtx
    command: str
    inputs: list[Path]
    mode: str = "all_minors"
    t0: int = 0
    x: int | None = None
    emit_slp: Path | None = None
    report_format: str = "plain"


class CliError(Exception):
    pass


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _ints(xs) -> str:
    return ",".join(map(str, xs))


def _emit(lines: list[str], fmt: str):
    """plain keeps ``key: value`` lines; tabular turns them into tab-separated rows."""
    for line in lines:
        if fmt == "tabular":
            key, _, rest = line.partition(": ")
            line = "\t".join([key, *rest.split()]) if rest else key
        print(line)


def cmd_color(cfg: RunConfig) -> int:
    (path,) = cfg.inputs
    try:
        g = parse_graph(_read(path))
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None
    found = decide_colorable(g, cfg.field)
    if found is None:
        print("UNCOLORABLE")
        return 1
    alpha, colors = found
    print(f"COLORABLE alpha={_ints(alpha)} colors={_ints(colors)}")
    return 0


def cmd_witness(cfg: RunConfig) -> int:
    ctx = cfg.field
    graphs = []
    for path in cfg.inputs:
        try:
            graphs.append(parse_graph(_read(path)))
        except GraphError as exc:
            raise CliError(f"{path}: {exc}") from None
    if not 0 <= cfg.t0 < ctx.q:
        raise CliError(f"--t0 {cfg.t0} is not an element of GF({ctx.q})")
    try:
        line = graph_line(*graphs, ctx)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    member = membership_via_roots(ctx, line, cfg.t0)
    report = conjecture_scan(*graphs, ctx, cfg.mode)
    delta = cfg.mode == "delta"
    answer = member.answer_delta if delta else member.answer

    lines = [f"schema: {WITNESS_SCHEMA}", f"field: {ctx}", f"mode: {cfg.mode}", f"t0: {cfg.t0}",
             "table: alpha f_alpha f_alpha(t0)"]
    for d in member.details:
        f, val = (d.f_delta, d.value_delta) if delta else (d.f, d.value)
        coeffs = _ints(f) if f else "0"
        lines.append(f"row: {_ints(d.alpha)} {coeffs} {val}")
    lines.append(f"member: {'yes' if answer else 'no'}")
    lines.append(f"deg phi: {report.deg_phi if report.deg_phi is not None else 'undefined (phi = 0)'}")
    lines.append(f"deg phi bound: {report.deg_phi_bound}")
    lines.append(f"deg chi: {report.deg_chi if report.deg_chi is not None else 'undefined (chi = 0)'}")
    ps = report.ps_reference
    lines.append(f"generic lower bound sqrt(deg chi)-1: {'n/a' if ps is None else f'{ps:.4f}'}")
    _emit(lines, cfg.report_format)
    return 0 if answer else 1


def _load_tree(path: Path, ctx: FieldCtx):
    try:
        return parse_tree(_read(path), ctx)
    except TreeError as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_tree_run(cfg: RunConfig) -> int:
    ctx = cfg.field
    t = _load_tree(cfg.inputs[0], ctx)
    if not 0 <= cfg.x < ctx.q:
        raise CliError(f"{cfg.x} is not an element of GF({ctx.q})")
    try:
        label, _ = evaluate(t, ctx, cfg.x)
    except EvaluationError as exc:
        raise CliError(f"division by zero at node {exc.node} for x={cfg.x}") from None
    print("in" if label else "out")
    return 0 if label else 1


def cmd_tree_compile(cfg: RunConfig) -> int:
    ctx = cfg.field
    t = _load_tree(cfg.inputs[0], ctx)
    report = full_pipeline(t, ctx)
    _emit(render_report(report, ctx).splitlines(), cfg.report_format)
    if cfg.emit_slp is not None:
        _, seq = report.best
        cfg.emit_slp.write_text(dump_slp(seq))
    return 0 if report.complexity.passed else 1


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    ap = argparse.ArgumentParser(prog="chroma", description="Finite-field colouring and decision-tree tools.",
                                 epilog=EXIT_CODES, formatter_class=fmt)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", required=True, help='field as "p^n", e.g. 2^2')
        p.add_argument("--format", dest="report_format", choices=("plain", "tabular"), default="plain")

    c = sub.add_parser("color", help="decide colourability of an oriented graph",
                       epilog=EXIT_CODES, formatter_class=fmt)
    common(c)
    c.add_argument("graph", type=Path)

    w = sub.add_parser("witness", help="witness polynomials along A(g1) + t A(g2)",
                       epilog=EXIT_CODES, formatter_class=fmt)
    common(w)
    w.add_argument("--t0", type=int, default=0, help="point of the line to test (field encoding)")
    w.add_argument("--mode", choices=MODES, default="all_minors")
    w.add_argument("graph1", type=Path)
    w.add_argument("graph2", type=Path)

    t = sub.add_parser("tree", help="run or compile a decision tree", epilog=EXIT_CODES, formatter_class=fmt)
    tsub = t.add_subparsers(dest="tree_command", required=True)
    r = tsub.add_parser("run", help="print the label the tree assigns to x", epilog=EXIT_CODES, formatter_class=fmt)
    common(r)
    r.add_argument("treefile", type=Path)
    r.add_argument("x", type=int)
    k = tsub.add_parser("compile", help="full pipeline report", epilog=EXIT_CODES, formatter_class=fmt)
    common(k)
    k.add_argument("--emit-slp", type=Path, help="write the shortest computation sequence here")
    k.add_argument("treefile", type=Path)
    return ap


def _config(ns) -> RunConfig:
    try:
        ctx = parse_field(ns.field)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if ns.command == "color":
        return RunConfig(ctx, "color", [ns.graph], report_format=ns.report_format)
    if ns.command == "witness":
        return RunConfig(ctx, "witness", [ns.graph1, ns.graph2], mode=ns.mode, t0=ns.t0,
                         report_format=ns.report_format)
    if ns.tree_command == "run":
        return RunConfig(ctx, "tree run", [ns.treefile], x=ns.x, report_format=ns.report_format)
    return RunConfig(ctx, "tree compile", [ns.treefile], emit_slp=ns.emit_slp,
                     report_format=ns.report_format)


COMMANDS = {
    "color": cmd_color,
    "witness": cmd_witness,
    "tree run": cmd_tree_run,
    "tree compile": cmd_tree_compile,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(ns)
        return COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
