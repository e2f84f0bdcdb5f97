"""Model well-formedness lints and view-conformance checking.

``validate`` re-checks the structural rules defensively and adds the
relational lints (unmatched calls/returns, branching, unreachable
states).  The ``check_*_view`` functions formalize "a view conforms"
as equality with the projection: set semantics for the class view
(its algorithm deduplicates), order-sensitive list semantics per
region for the state and sequence views (their algorithms read rows
off the stored relation in order).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import AgentKind, SystemItg, Tag
from .diagnostics import (
    BAD_AGENT_KIND,
    BRANCHING_REGION,
    DUPLICATE_ROW,
    UNMATCHED_CAL,
    UNMATCHED_RET,
    UNREACHABLE_STATE,
    Diagnostic,
    Severity,
)
from .project import (
    ClassRelation,
    ClassRow,
    SequenceRelationComposite,
    SequenceRow,
    StateRelationComposite,
    StateRow,
    branching_sources,
    project_class,
    project_sequence,
    project_state,
)

ReportRow = Union[ClassRow, tuple[str, StateRow], tuple[str, SequenceRow]]


@dataclass(frozen=True)
class ConformanceReport:
    """Difference between a projected view and a candidate view.

    ``missing`` rows are in the projection but not the candidate;
    ``extra`` rows are in the candidate but not the projection.
    """

    missing: tuple[ReportRow, ...] = ()
    extra: tuple[ReportRow, ...] = ()

    @property
    def conformant(self) -> bool:
        return not self.missing and not self.extra


def validate(system: SystemItg) -> list[Diagnostic]:
    """All violations in the system; an empty list means clean.

    Errors flag core-invariant breaches (duplicate transitions, actor
    callees) that can only occur in values built outside the normal
    constructors.  Warnings flag the relational lints: UNMATCHED_RET /
    UNMATCHED_CAL (no counterpart with the same caller, operation, and
    callee anywhere in the region), BRANCHING_REGION (some state has two
    or more outgoing transitions), and UNREACHABLE_STATE (not reachable
    from the region's initial state).
    """
    out: list[Diagnostic] = []
    for region in system.regions:
        seen = set()
        for i, t in enumerate(region.transitions):
            if t in seen:
                out.append(
                    Diagnostic(
                        Severity.ERROR,
                        DUPLICATE_ROW,
                        f"duplicate transition {t.source} -> {t.target} : "
                        f"{t.interaction.tag.value} {t.interaction.op_name}",
                        region=region.name,
                        transition_index=i,
                    )
                )
            seen.add(t)
            if t.interaction.callee.kind is not AgentKind.OBJECT:
                out.append(
                    Diagnostic(
                        Severity.ERROR,
                        BAD_AGENT_KIND,
                        f"callee {t.interaction.callee.name!r} is not an object",
                        region=region.name,
                        transition_index=i,
                    )
                )

        cal_keys = set()
        ret_keys = set()
        for t in region.transitions:
            ia = t.interaction
            key = (ia.caller, ia.op_name, ia.callee)
            (cal_keys if ia.tag is Tag.CAL else ret_keys).add(key)
        for i, t in enumerate(region.transitions):
            ia = t.interaction
            key = (ia.caller, ia.op_name, ia.callee)
            if ia.tag is Tag.RET and key not in cal_keys:
                out.append(
                    Diagnostic(
                        Severity.WARNING,
                        UNMATCHED_RET,
                        f"return of {ia.op_name!r} ({ia.caller.text} <- {ia.callee.text}) "
                        "has no matching call in the region",
                        region=region.name,
                        transition_index=i,
                    )
                )
            elif ia.tag is Tag.CAL and key not in ret_keys:
                out.append(
                    Diagnostic(
                        Severity.WARNING,
                        UNMATCHED_CAL,
                        f"call of {ia.op_name!r} ({ia.caller.text} -> {ia.callee.text}) "
                        "has no matching return in the region",
                        region=region.name,
                        transition_index=i,
                    )
                )

        branchy = branching_sources(region)
        if branchy:
            out.append(
                Diagnostic(
                    Severity.WARNING,
                    BRANCHING_REGION,
                    f"region {region.name!r} branches at {', '.join(branchy)}",
                    region=region.name,
                )
            )

        reachable = {region.initial}
        frontier = [region.initial]
        edges: dict[str, list[str]] = {}
        for t in region.transitions:
            edges.setdefault(t.source, []).append(t.target)
        while frontier:
            state = frontier.pop()
            for nxt in edges.get(state, ()):
                if nxt not in reachable:
                    reachable.add(nxt)
                    frontier.append(nxt)
        for state in region.states:
            if state not in reachable:
                out.append(
                    Diagnostic(
                        Severity.WARNING,
                        UNREACHABLE_STATE,
                        f"state {state!r} is not reachable from {region.initial!r}",
                        region=region.name,
                    )
                )
    return out


def check_class_view(system: SystemItg, candidate: ClassRelation) -> ConformanceReport:
    """Compare the candidate class view with the projection, set-wise."""
    projected = set(project_class(system).rows)
    given = set(candidate.rows)
    missing = tuple(sorted(projected - given, key=ClassRow._sort_key))
    extra = tuple(sorted(given - projected, key=ClassRow._sort_key))
    return ConformanceReport(missing, extra)


def _check_composite(
    projection_regions: tuple[tuple[str, tuple], ...],
    candidate_regions: tuple[tuple[str, tuple], ...],
) -> ConformanceReport:
    missing: list[ReportRow] = []
    extra: list[ReportRow] = []
    candidate_map = dict(candidate_regions)
    projected_names = {name for name, _ in projection_regions}
    for name, prows in projection_regions:
        crows = candidate_map.get(name)
        if crows is None:
            missing.extend((name, row) for row in prows)
            continue
        for i in range(max(len(prows), len(crows))):
            if i >= len(crows):
                missing.append((name, prows[i]))
            elif i >= len(prows):
                extra.append((name, crows[i]))
            elif prows[i] != crows[i]:
                missing.append((name, prows[i]))
                extra.append((name, crows[i]))
    for name, crows in candidate_regions:
        if name not in projected_names:
            extra.extend((name, row) for row in crows)
    return ConformanceReport(tuple(missing), tuple(extra))


def check_state_view(
    system: SystemItg, candidate: StateRelationComposite
) -> ConformanceReport:
    """Compare region-wise with order-sensitive row semantics; regions are
    matched by name, and a name present on only one side reports that
    whole region's rows."""
    return _check_composite(project_state(system).regions, candidate.regions)


def check_sequence_view(
    system: SystemItg, candidate: SequenceRelationComposite
) -> ConformanceReport:
    """As check_state_view, order-sensitive on the execution order column."""
    return _check_composite(project_sequence(system).regions, candidate.regions)


def _render_report_row(item: ReportRow) -> str:
    if isinstance(item, ClassRow):
        return f"{item.class_name.text} / {item.signature.op_name} / {item.signature.params.text}"
    region, row = item
    if isinstance(row, StateRow):
        return f"{region}: {row.source} -{row.tag.value} {row.op_name}-> {row.target}"
    return (
        f"{region}: E={row.order} {row.tag.value} {row.caller.text} -> "
        f"{row.callee.text} . {row.op_name}({row.params.text})"
    )


def format_report(report: ConformanceReport) -> str:
    """Human-readable conformance report."""
    lines = [f"conformant: {'yes' if report.conformant else 'no'}"]
    lines.append(f"missing rows ({len(report.missing)}):")
    lines.extend(f"  - {_render_report_row(r)}" for r in report.missing)
    lines.append(f"extra rows ({len(report.extra)}):")
    lines.extend(f"  + {_render_report_row(r)}" for r in report.extra)
    return "\n".join(lines) + "\n"


def report_to_dict(report: ConformanceReport) -> dict:
    """JSON-ready form of a report; row fields mirror the CSV columns."""

    def row_dict(item: ReportRow) -> dict:
        if isinstance(item, ClassRow):
            return {
                "C": item.class_name.text,
                "LAMBDA": item.signature.op_name,
                "THETA": item.signature.params.text,
            }
        region, row = item
        if isinstance(row, StateRow):
            return {
                "REGION": region,
                "S1": row.source,
                "N": row.tag.value,
                "LAMBDA": row.op_name,
                "S2": row.target,
            }
        return {
            "REGION": region,
            "E": str(row.order),
            "N": row.tag.value,
            "XI": row.caller.text,
            "LAMBDA": row.op_name,
            "THETA": row.params.text,
            "GAMMA": row.callee.text,
        }

    return {
        "conformant": report.conformant,
        "missing": [row_dict(r) for r in report.missing],
        "extra": [row_dict(r) for r in report.extra],
    }
