"""Command-line frontend: parse, validate, project, check, emit, simulate.

Exit codes: 0 success (and conformant), 1 validation failure or
nonconformant view, 2 parse error in an input file, 3 usage error.
Results go to stdout (or ``--out``), diagnostics to stderr; stdout is
byte-deterministic for identical argv and inputs.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import conform, emit, simulate, textio
from .core import ModelError, SystemItg
from .diagnostics import Diagnostic, Severity
from .project import project_class, project_sequence, project_state
from .textio import ParseResult, RelationKind

_EXIT_OK = 0
_EXIT_FAIL = 1
_EXIT_PARSE = 2
_EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(_EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="sbc", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="path to a .sbc model file")
    common.add_argument("--strict", action="store_true",
                        help="treat warnings as failures (exit 1)")
    common.add_argument("--json-diagnostics", action="store_true",
                        help="machine-readable diagnostics on stderr")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", metavar="PATH",
                     help="write the result to PATH instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common],
                   help="check model well-formedness and lints")

    p = sub.add_parser("project", parents=[common, out],
                       help="project a view relation from the model")
    p.add_argument("--view", required=True, choices=["class", "state", "sequence"])
    p.add_argument("--format", default="table", choices=["table", "csv", "json"])

    p = sub.add_parser("check", parents=[common, out],
                       help="check an externally supplied view for conformance")
    p.add_argument("--view", required=True, choices=["class", "state", "sequence"])
    p.add_argument("--against", required=True, metavar="PATH",
                   help="candidate view (.csv or .json)")
    p.add_argument("--format", default="table", choices=["table", "json"])

    p = sub.add_parser("emit", parents=[common, out],
                       help="emit diagram text (PlantUML views or the DOT graph)")
    p.add_argument("--view", choices=["class", "state", "sequence"])
    p.add_argument("--format", default="plantuml", choices=["plantuml", "dot"])

    p = sub.add_parser("simulate", parents=[common, out],
                       help="run the composed system with fair random choice")
    p.add_argument("--steps", required=True, type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--format", default="trace", choices=["trace", "json"])

    return parser


def _emit_parse_diagnostics(result: ParseResult, json_mode: bool) -> None:
    if json_mode:
        payload = [d.to_dict() for d in result.diagnostics]
        sys.stderr.write(json.dumps(payload, indent=2) + "\n")
    else:
        for d in result.diagnostics:
            sys.stderr.write(d.render() + "\n")


def _emit_diagnostics(
    diags: Sequence[Diagnostic], result: ParseResult, json_mode: bool
) -> None:
    spans = result.spans or {}
    if json_mode:
        payload = []
        for d in diags:
            entry = d.to_dict()
            span = (
                spans.get((d.region, d.transition_index))
                if d.region is not None and d.transition_index is not None
                else None
            )
            if span is not None:
                entry["line"] = span.line
                entry["column"] = span.column
            payload.append(entry)
        sys.stderr.write(json.dumps(payload, indent=2) + "\n")
        return
    for d in diags:
        span = (
            spans.get((d.region, d.transition_index))
            if d.region is not None and d.transition_index is not None
            else None
        )
        prefix = f"{span.line}:{span.column}: " if span is not None else ""
        sys.stderr.write(prefix + d.render() + "\n")


def _load_model(path: str, json_mode: bool) -> tuple[SystemItg, ParseResult] | int:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        sys.stderr.write(f"sbc: cannot read {path}: {e.strerror or e}\n")
        return _EXIT_PARSE
    result = textio.parse_model(text)
    if not result.ok:
        _emit_parse_diagnostics(result, json_mode)
        return _EXIT_PARSE
    assert result.system is not None
    return result.system, result


def _write_result(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_candidate(path: str, kind: RelationKind):
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json"):
        return textio.import_relation_json(text, kind)
    return textio.import_relation_csv(text, kind)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    loaded = _load_model(args.model, args.json_diagnostics)
    if isinstance(loaded, int):
        return loaded
    system, parse_result = loaded

    try:
        if args.command == "validate":
            return _cmd_validate(args, system, parse_result)
        if args.command == "project":
            return _cmd_project(args, system, parse_result)
        if args.command == "check":
            return _cmd_check(args, system)
        if args.command == "emit":
            return _cmd_emit(args, system)
        return _cmd_simulate(args, system)
    except textio.HeaderMismatchError as e:
        sys.stderr.write(f"sbc: {e}\n")
        return _EXIT_PARSE
    except textio.BadCellError as e:
        sys.stderr.write(f"sbc: {e}\n")
        return _EXIT_PARSE
    except ModelError as e:
        sys.stderr.write(f"sbc: {e}\n")
        return _EXIT_FAIL


def _cmd_validate(args, system: SystemItg, parse_result: ParseResult) -> int:
    diags = conform.validate(system)
    _emit_diagnostics(diags, parse_result, args.json_diagnostics)
    if any(d.severity is Severity.ERROR for d in diags):
        return _EXIT_FAIL
    if diags and args.strict:
        return _EXIT_FAIL
    return _EXIT_OK


def _views(view: str):
    return {
        "class": (project_class, RelationKind.CLASS),
        "state": (project_state, RelationKind.STATE),
        "sequence": (project_sequence, RelationKind.SEQUENCE),
    }[view]


def _cmd_project(args, system: SystemItg, parse_result: ParseResult) -> int:
    projector, _ = _views(args.view)
    rel = projector(system)
    warnings = tuple(getattr(rel, "warnings", ()))
    if warnings:
        _emit_diagnostics(warnings, parse_result, args.json_diagnostics)
    if args.format == "csv":
        text = textio.export_relation_csv(rel)
    elif args.format == "json":
        text = textio.export_relation_json(rel)
    else:
        text = textio.render_relation_table(rel)
    _write_result(text, args.out)
    return _EXIT_FAIL if warnings and args.strict else _EXIT_OK


def _cmd_check(args, system: SystemItg) -> int:
    _, kind = _views(args.view)
    try:
        candidate = _load_candidate(args.against, kind)
    except OSError as e:
        sys.stderr.write(f"sbc: cannot read {args.against}: {e.strerror or e}\n")
        return _EXIT_PARSE
    checker = {
        "class": conform.check_class_view,
        "state": conform.check_state_view,
        "sequence": conform.check_sequence_view,
    }[args.view]
    report = checker(system, candidate)
    if args.format == "json":
        text = json.dumps(conform.report_to_dict(report), indent=2) + "\n"
    else:
        text = conform.format_report(report)
    _write_result(text, args.out)
    return _EXIT_OK if report.conformant else _EXIT_FAIL


def _cmd_emit(args, system: SystemItg) -> int:
    if args.format == "dot":
        if args.view is not None:
            sys.stderr.write(
                "sbc emit: error: --view does not apply to --format dot "
                "(the graph covers the whole system)\n"
            )
            return _EXIT_USAGE
        text = emit.emit_itg_graph(system)
    else:
        if args.view is None:
            sys.stderr.write("sbc emit: error: --view is required for --format plantuml\n")
            return _EXIT_USAGE
        if args.view == "class":
            text = emit.emit_class_diagram(project_class(system))
        elif args.view == "state":
            initials = {r.name: r.initial for r in system.regions}
            text = emit.emit_state_diagram(project_state(system), initials, name=system.name)
        else:
            text = emit.emit_sequence_diagram(project_sequence(system))
    _write_result(text, args.out)
    return _EXIT_OK


def _cmd_simulate(args, system: SystemItg) -> int:
    if args.steps < 0:
        sys.stderr.write("sbc: --steps must be non-negative\n")
        return _EXIT_USAGE
    trace = simulate.run(system, args.steps, args.seed)
    if args.format == "json":
        text = simulate.trace_to_json(trace)
    else:
        text = simulate.format_trace(trace)
    _write_result(text, args.out)
    return _EXIT_OK


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
