"""Textual diagram emission: PlantUML for the three views, DOT for the graph.

All emitters are deterministic (equal input, byte-identical output) and
stick to a small construct subset; ``check_plantuml`` / ``check_dot`` are
matching minimal syntax validators over exactly that subset, used by the
test suite to keep the emitters honest.
"""
from __future__ import annotations

import re
from typing import Mapping

from .core import Agent, AgentKind, ModelError, SystemItg, Tag
from .project import (
    ClassRelation,
    SequenceRelationComposite,
    StateRelationComposite,
)


class MissingInitialError(ModelError):
    """The state-view emitter was not given a region's initial state."""


def emit_class_diagram(rel: ClassRelation) -> str:
    """PlantUML class diagram: one block per class, one ``+op(params)``
    line per row, everything in the relation's canonical order."""
    lines = ["@startuml"]
    current: Agent | None = None
    for row in rel.rows:
        if row.class_name != current:
            if current is not None:
                lines.append("}")
            lines.append(f"class {row.class_name.name} {{")
            current = row.class_name
        lines.append(f"  +{row.signature.op_name}({row.signature.params.text})")
    if current is not None:
        lines.append("}")
    lines.append("@enduml")
    return "\n".join(lines) + "\n"


def _state_alias(region: str, state: str) -> str:
    # state names may repeat across regions; aliases keep them apart
    return f"{region}__{state}"


def emit_state_diagram(
    rel: StateRelationComposite,
    initials: Mapping[str, str],
    name: str = "system",
) -> str:
    """PlantUML state diagram: one composite state holding every region,
    regions separated by dividers, each with an entry arrow into its
    initial state.

    ``initials`` maps region name to initial state name (carried alongside
    from the system); a region without an entry raises MissingInitialError.
    """
    lines = ["@startuml", f"state {name} {{"]
    for idx, (region, rows) in enumerate(rel.regions):
        initial = initials.get(region)
        if initial is None:
            raise MissingInitialError(f"no initial state supplied for region {region!r}")
        if idx > 0:
            lines.append("  --")
        lines.append(f"  ' region {region}")
        states: list[str] = [initial]
        for row in rows:
            for s in (row.source, row.target):
                if s not in states:
                    states.append(s)
        for s in states:
            lines.append(f'  state "{s}" as {_state_alias(region, s)}')
        lines.append(f"  [*] --> {_state_alias(region, initial)}")
        for row in rows:
            lines.append(
                f"  {_state_alias(region, row.source)} --> "
                f"{_state_alias(region, row.target)} : {row.tag.value} {row.op_name}"
            )
    lines.append("}")
    lines.append("@enduml")
    return "\n".join(lines) + "\n"


def emit_sequence_diagram(rel: SequenceRelationComposite) -> str:
    """One PlantUML sequence document per region, concatenated.

    Actors declare as ``actor``, objects as ``participant``, in first
    appearance order.  Call rows draw solid arrows caller -> callee;
    return rows draw dashed reply arrows callee --> caller.
    """
    docs: list[str] = []
    for region, rows in rel.regions:
        lines = ["@startuml", f"title {region}"]
        seen: list[Agent] = []
        for row in rows:
            for agent in (row.caller, row.callee):
                if agent not in seen:
                    seen.append(agent)
        for agent in seen:
            keyword = "actor" if agent.kind is AgentKind.ACTOR else "participant"
            lines.append(f"{keyword} {agent.name}")
        for row in rows:
            label = f"{row.op_name}({row.params.text})"
            if row.tag is Tag.CAL:
                lines.append(f"{row.caller.name} -> {row.callee.name} : {label}")
            else:
                lines.append(f"{row.callee.name} --> {row.caller.name} : {label}")
        lines.append("@enduml")
        docs.append("\n".join(lines) + "\n")
    return "\n".join(docs)


def emit_itg_graph(system: SystemItg) -> str:
    """DOT digraph: one cluster per region, a point-shaped entry node with
    an arrow into each initial state, one labeled edge per transition."""
    lines = [f"digraph {system.name} {{", "  rankdir=LR;"]
    for region in system.regions:
        lines.append(f"  subgraph cluster_{region.name} {{")
        lines.append(f'    label="{region.name}";')
        entry = f"{region.name}.__entry"
        lines.append(f'    "{entry}" [shape=point, label=""];')
        for state in region.states:
            lines.append(f'    "{region.name}.{state}" [label="{state}"];')
        lines.append(f'    "{entry}" -> "{region.name}.{region.initial}";')
        for t in region.transitions:
            ia = t.interaction
            label = f"{ia.tag.value} {ia.caller.text}→{ia.callee.text}.{ia.op_name}({ia.params.text})"
            lines.append(
                f'    "{region.name}.{t.source}" -> "{region.name}.{t.target}" '
                f'[label="{label}"];'
            )
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Minimal syntax validators over the emitted construct subsets

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_PLANTUML_LINE_RES = [re.compile(p) for p in (
    r"@startuml\Z",
    r"@enduml\Z",
    r"\s*\Z",
    r"\s*' .*\Z",
    rf"title {_NAME}\Z",
    rf"\s*class {_NAME} \{{\Z",
    rf"\s*state {_NAME} \{{\Z",
    rf'\s*state "{_NAME}" as {_NAME}\Z',
    r"\s*\}\Z",
    r"\s*--\Z",
    rf"\s*\[\*\] --> {_NAME}\Z",
    rf"\s*\+{_NAME}\(.*\)\Z",
    rf"actor {_NAME}\Z",
    rf"participant {_NAME}\Z",
)]
_PLANTUML_ARROW_RE = re.compile(
    rf"\s*{_NAME} (->|-->) {_NAME}( : \S.*)?\Z"
)


def check_plantuml(text: str) -> list[str]:
    """Problems in PlantUML text, restricted to the constructs the
    emitters produce; an empty list means syntactically valid."""
    problems: list[str] = []
    depth = 0
    in_doc = False
    for n, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped == "@startuml":
            if in_doc:
                problems.append(f"line {n}: nested @startuml")
            in_doc = True
            continue
        if stripped == "@enduml":
            if not in_doc:
                problems.append(f"line {n}: @enduml without @startuml")
            if depth != 0:
                problems.append(f"line {n}: unbalanced braces at @enduml")
            in_doc = False
            continue
        if stripped and not in_doc:
            problems.append(f"line {n}: content outside @startuml/@enduml")
            continue
        depth += stripped.count("{") - stripped.count("}")
        if depth < 0:
            problems.append(f"line {n}: unbalanced '}}'")
            depth = 0
        if not stripped or stripped.startswith("'"):
            continue
        if "->" in stripped and "[*]" not in stripped and not stripped.startswith("+"):
            if not _PLANTUML_ARROW_RE.match(line):
                problems.append(f"line {n}: malformed arrow {stripped!r}")
            continue
        if not any(r.match(line) for r in _PLANTUML_LINE_RES):
            problems.append(f"line {n}: unrecognized construct {stripped!r}")
    if in_doc:
        problems.append("missing @enduml")
    return problems


_DOT_LINE_RES = [re.compile(p) for p in (
    rf"digraph {_NAME} \{{\Z",
    r"\s*rankdir=(LR|TB);\Z",
    rf"\s*subgraph cluster_{_NAME} \{{\Z",
    r'\s*label="[^"]*";\Z',
    r'\s*"[^"]+" \[[^\]]*\];\Z',
    r'\s*"[^"]+" -> "[^"]+"( \[label="[^"]*"\])?;\Z',
    r"\s*\}\Z",
)]


def check_dot(text: str) -> list[str]:
    """Problems in DOT text, restricted to the emitted construct subset."""
    problems: list[str] = []
    lines = text.splitlines()
    if not lines or not re.match(rf"digraph {_NAME} \{{\Z", lines[0]):
        problems.append("line 1: expected 'digraph <name> {'")
    depth = 0
    for n, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        depth += line.count("{") - line.count("}")
        if depth < 0:
            problems.append(f"line {n}: unbalanced '}}'")
            depth = 0
        if not any(r.match(line) for r in _DOT_LINE_RES):
            problems.append(f"line {n}: unrecognized construct {line.strip()!r}")
    if depth != 0:
        problems.append("unbalanced braces at end of input")
    return problems
