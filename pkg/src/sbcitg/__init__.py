"""sbcitg: interaction transition graph models, UML view projection,
conformance checking, diagram emission, and fair-choice simulation.

The usual entry points:

* :func:`sbcitg.textio.parse_model` / :func:`sbcitg.textio.render_model`
  for the ``.sbc`` DSL,
* :func:`sbcitg.core.compose` / :func:`sbcitg.core.merge_signatures`
  for building systems programmatically,
* :func:`sbcitg.project.project_class` (and ``_state``, ``_sequence``)
  for the view relations,
* :func:`sbcitg.conform.validate` / ``check_*_view`` for consistency,
* :mod:`sbcitg.emit` for PlantUML/DOT text,
* :func:`sbcitg.simulate.run` for reproducible traces.
"""
from .core import (
    Agent,
    AgentKind,
    Direction,
    Interaction,
    Itg,
    ModelError,
    OpSignature,
    ParamList,
    Parameter,
    SystemItg,
    Tag,
    Transition,
    compose,
    merge_signatures,
)
from .diagnostics import Diagnostic, Severity
from .project import (
    ClassRelation,
    ClassRow,
    SequenceRelationComposite,
    SequenceRow,
    StateRelationComposite,
    StateRow,
    project_class,
    project_sequence,
    project_state,
)
from .conform import (
    ConformanceReport,
    check_class_view,
    check_sequence_view,
    check_state_view,
    validate,
)
from .simulate import CompositeState, RngState, Trace, TraceStep, initial_state, run
from .textio import parse_model, render_model

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "AgentKind",
    "ClassRelation",
    "ClassRow",
    "CompositeState",
    "ConformanceReport",
    "Diagnostic",
    "Direction",
    "Interaction",
    "Itg",
    "ModelError",
    "OpSignature",
    "ParamList",
    "Parameter",
    "RngState",
    "SequenceRelationComposite",
    "SequenceRow",
    "Severity",
    "StateRelationComposite",
    "StateRow",
    "SystemItg",
    "Tag",
    "Trace",
    "TraceStep",
    "Transition",
    "check_class_view",
    "check_sequence_view",
    "check_state_view",
    "compose",
    "initial_state",
    "merge_signatures",
    "parse_model",
    "project_class",
    "project_sequence",
    "project_state",
    "render_model",
    "run",
    "validate",
]
