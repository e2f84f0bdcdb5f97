"""Projection of UML view relations from a composed transition system.

Each projection is a pure relational pass over the system's transition
relation:

* class view: per region, the distinct (callee, operation, parameters)
  triples of call rows, with each call signature merged against its
  matching return signature when one exists; the per-region results are
  unioned, deduplicated, and canonically ordered.
* state view: per region, the (source, tag, operation, target) columns
  of every transition, in declaration order, no dedup.
* sequence view: per region, the (tag, caller, operation, parameters,
  callee) columns of every transition in declaration order, numbered by
  an identity column starting at 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Agent,
    AgentKind,
    Itg,
    ModelError,
    OpSignature,
    ParamList,
    SystemItg,
    Tag,
    merge_signatures,
    _require_ident,
)
from .diagnostics import BRANCHING_REGION, Diagnostic, Severity


class AmbiguousReturnError(ModelError):
    """One (callee, operation) call key matches two or more distinct
    return parameter lists within a region."""


@dataclass(frozen=True)
class ClassRow:
    class_name: Agent
    signature: OpSignature

    def __post_init__(self) -> None:
        if self.class_name.kind is not AgentKind.OBJECT:
            raise ModelError(f"class {self.class_name.name!r} must be an object agent")

    def _sort_key(self) -> tuple[str, str, str]:
        return (self.class_name.name, self.signature.op_name, self.signature.params.text)


@dataclass(frozen=True)
class ClassRelation:
    """Deduplicated class/operation rows in canonical order (byte-wise by
    class name, then operation name; parameter text breaks ties)."""

    rows: tuple[ClassRow, ...] = ()

    def __post_init__(self) -> None:
        deduped = sorted(set(self.rows), key=ClassRow._sort_key)
        object.__setattr__(self, "rows", tuple(deduped))

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def classes(self) -> tuple[Agent, ...]:
        out: list[Agent] = []
        for row in self.rows:
            if not out or out[-1] != row.class_name:
                out.append(row.class_name)
        return tuple(out)


@dataclass(frozen=True)
class StateRow:
    source: str
    tag: Tag
    op_name: str
    target: str

    def __post_init__(self) -> None:
        _require_ident(self.source, "state name")
        _require_ident(self.op_name, "operation name")
        _require_ident(self.target, "state name")


@dataclass(frozen=True)
class StateRelationComposite:
    """Per-region state-view rows; row order equals transition declaration
    order and row count equals the region's transition count."""

    regions: tuple[tuple[str, tuple[StateRow, ...]], ...] = ()

    def __post_init__(self) -> None:
        normalized = tuple((name, tuple(rows)) for name, rows in self.regions)
        names = [name for name, _ in normalized]
        if len(set(names)) != len(names):
            raise ModelError("duplicate region name in state relation")
        object.__setattr__(self, "regions", normalized)

    def region(self, name: str) -> tuple[StateRow, ...]:
        for rname, rows in self.regions:
            if rname == name:
                return rows
        raise KeyError(name)


@dataclass(frozen=True)
class SequenceRow:
    order: int
    tag: Tag
    caller: Agent
    op_name: str
    params: ParamList
    callee: Agent

    def __post_init__(self) -> None:
        # order >= 0 (not 1) so that nonconformant candidates are representable;
        # projection output always numbers from 1.
        if self.order < 0:
            raise ModelError(f"execution order must be non-negative, got {self.order}")
        _require_ident(self.op_name, "operation name")
        if self.callee.kind is not AgentKind.OBJECT:
            raise ModelError(f"callee {self.callee.name!r} must be an object agent")


@dataclass(frozen=True)
class SequenceRelationComposite:
    """Per-region sequence-view rows.  ``warnings`` carries any branching
    diagnostics from projection and is excluded from equality."""

    regions: tuple[tuple[str, tuple[SequenceRow, ...]], ...] = ()
    warnings: tuple[Diagnostic, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        normalized = tuple((name, tuple(rows)) for name, rows in self.regions)
        names = [name for name, _ in normalized]
        if len(set(names)) != len(names):
            raise ModelError("duplicate region name in sequence relation")
        object.__setattr__(self, "regions", normalized)
        object.__setattr__(self, "warnings", tuple(self.warnings))

    def region(self, name: str) -> tuple[SequenceRow, ...]:
        for rname, rows in self.regions:
            if rname == name:
                return rows
        raise KeyError(name)


def branching_sources(region: Itg) -> tuple[str, ...]:
    """States with two or more outgoing transitions, in state order."""
    outdeg: dict[str, int] = {}
    for t in region.transitions:
        outdeg[t.source] = outdeg.get(t.source, 0) + 1
    return tuple(s for s in region.states if outdeg.get(s, 0) >= 2)


def project_class(system: SystemItg) -> ClassRelation:
    """Project the class view.

    Per region: the distinct (callee, operation, parameters) triples of
    CAL rows become candidate rows; a candidate whose (callee, operation)
    key has a matching distinct RET triple gets the merged signature.
    RET-only keys contribute nothing.  Results are unioned over regions,
    deduplicated, and canonically ordered.

    Raises AmbiguousReturnError when a key matches two or more distinct
    return parameter lists within one region.
    """
    rows: list[ClassRow] = []
    for region in system.regions:
        calls: list[tuple[Agent, str, ParamList]] = []
        seen_calls: set[tuple[Agent, str, ParamList]] = set()
        returns: dict[tuple[Agent, str], list[ParamList]] = {}
        for t in region.transitions:
            ia = t.interaction
            if ia.tag is Tag.CAL:
                triple = (ia.callee, ia.op_name, ia.params)
                if triple not in seen_calls:
                    seen_calls.add(triple)
                    calls.append(triple)
            else:
                distinct = returns.setdefault((ia.callee, ia.op_name), [])
                if ia.params not in distinct:
                    distinct.append(ia.params)
        for callee, op_name, params in calls:
            sig = OpSignature(op_name, params)
            ret_lists = returns.get((callee, op_name))
            if ret_lists is not None:
                if len(ret_lists) > 1:
                    raise AmbiguousReturnError(
                        f"region {region.name!r}: operation {op_name!r} on "
                        f"{callee.text} returns with {len(ret_lists)} distinct "
                        f"parameter lists ({'; '.join(repr(p.text) for p in ret_lists)})"
                    )
                sig = merge_signatures(sig, OpSignature(op_name, ret_lists[0]))
            rows.append(ClassRow(callee, sig))
    return ClassRelation(tuple(rows))


def project_state(system: SystemItg) -> StateRelationComposite:
    """Project the state view: drop the caller, parameter, and callee
    columns, keep every transition in declaration order, region-wise."""
    return StateRelationComposite(
        tuple(
            (
                region.name,
                tuple(
                    StateRow(t.source, t.interaction.tag, t.interaction.op_name, t.target)
                    for t in region.transitions
                ),
            )
            for region in system.regions
        )
    )


def project_sequence(system: SystemItg) -> SequenceRelationComposite:
    """Project the sequence view: drop the state columns, keep every
    transition in declaration order, numbered 1..n per region.

    A region whose transitions do not form a single path or cycle from
    its initial state (some state has out-degree >= 2) gets a branching
    warning attached to the result: declaration order may not be a real
    execution order there.
    """
    regions: list[tuple[str, tuple[SequenceRow, ...]]] = []
    warnings: list[Diagnostic] = []
    for region in system.regions:
        rows = tuple(
            SequenceRow(
                i,
                t.interaction.tag,
                t.interaction.caller,
                t.interaction.op_name,
                t.interaction.params,
                t.interaction.callee,
            )
            for i, t in enumerate(region.transitions, start=1)
        )
        regions.append((region.name, rows))
        branchy = branching_sources(region)
        if branchy:
            warnings.append(
                Diagnostic(
                    Severity.WARNING,
                    BRANCHING_REGION,
                    f"region {region.name!r} branches at {', '.join(branchy)}; "
                    "execution order follows declaration order, which may not be a "
                    "real run",
                    region=region.name,
                )
            )
    return SequenceRelationComposite(tuple(regions), tuple(warnings))
