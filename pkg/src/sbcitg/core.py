"""Relational domain model for interaction transition graphs.

Everything in here is an immutable value type: agents, parameters,
operation signatures, tagged value-passing interactions, transitions,
single-region graphs (Itg), and orthogonally composed systems
(SystemItg).  Equality is structural throughout, all values are hashable,
and every operation is a pure function, so values can be shared freely
across threads.

The two operators this module owns:

* :func:`compose` builds a system as an ordered list of regions under
  pure interleaving.  Regions share no synchronization labels; composition
  is purely structural and never touches the transitions themselves.
* :func:`merge_signatures` folds an operation-call signature and its
  corresponding operation-return signature into one full signature
  (call parameters first, then return parameters).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ModelError(ValueError):
    """A domain value or operator contract was violated."""


class EmptyRegionListError(ModelError):
    """compose() was given no regions."""


class DuplicateRegionNameError(ModelError):
    """Two regions in one system share a name."""


class NameMismatchError(ModelError):
    """merge_signatures() was given signatures for different operations."""


class ParamConflictError(ModelError):
    """The same parameter name appears with conflicting direction or type."""


def _require_ident(name: str, what: str) -> str:
    if not isinstance(name, str) or not IDENT_RE.match(name):
        raise ModelError(f"{what} must match [A-Za-z_][A-Za-z0-9_]*, got {name!r}")
    return name


class AgentKind(Enum):
    ACTOR = "actor"
    OBJECT = "object"


@dataclass(frozen=True)
class Agent:
    """An interaction participant: an environment actor or a system object.

    The leading-colon notation (``:Customer_UI`` vs ``Customer``) is pure
    notation; only ``kind`` records it, ``name`` is always bare.
    """

    kind: AgentKind
    name: str

    def __post_init__(self) -> None:
        _require_ident(self.name, "agent name")

    @classmethod
    def actor(cls, name: str) -> Agent:
        return cls(AgentKind.ACTOR, name)

    @classmethod
    def obj(cls, name: str) -> Agent:
        return cls(AgentKind.OBJECT, name)

    @property
    def text(self) -> str:
        """Notation form: objects carry the leading colon, actors are bare."""
        return f":{self.name}" if self.kind is AgentKind.OBJECT else self.name


class Direction(Enum):
    IN = "in"
    OUT = "out"
    INOUT = "inout"


@dataclass(frozen=True)
class Parameter:
    direction: Direction
    name: str
    param_type: str | None = None

    def __post_init__(self) -> None:
        _require_ident(self.name, "parameter name")
        if self.param_type is not None:
            _require_ident(self.param_type, "parameter type")

    @property
    def text(self) -> str:
        """``<direction> <name>[: <type>]``, the notation used everywhere."""
        base = f"{self.direction.value} {self.name}"
        return f"{base}: {self.param_type}" if self.param_type else base


@dataclass(frozen=True)
class ParamList:
    """Ordered parameter list; names are unique within one list."""

    params: tuple[Parameter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(self.params))
        seen: set[str] = set()
        for p in self.params:
            if p.name in seen:
                raise ModelError(f"duplicate parameter name {p.name!r} in one list")
            seen.add(p.name)

    def __iter__(self) -> Iterator[Parameter]:
        return iter(self.params)

    def __len__(self) -> int:
        return len(self.params)

    def __bool__(self) -> bool:
        return bool(self.params)

    @property
    def text(self) -> str:
        """Items joined by ``; `` (empty string for the empty list)."""
        return "; ".join(p.text for p in self.params)


@dataclass(frozen=True)
class OpSignature:
    op_name: str
    params: ParamList = ParamList()

    def __post_init__(self) -> None:
        _require_ident(self.op_name, "operation name")

    @property
    def text(self) -> str:
        return f"{self.op_name}({self.params.text})"


class Tag(Enum):
    """Interaction tag: exactly operation call and operation return."""

    CAL = "CAL"
    RET = "RET"


@dataclass(frozen=True)
class Interaction:
    """An indivisible handshake: a caller invokes (or is answered by) an
    operation on a callee object.  Callees are always objects; callers may
    be actors or objects."""

    tag: Tag
    caller: Agent
    op_name: str
    params: ParamList
    callee: Agent

    def __post_init__(self) -> None:
        _require_ident(self.op_name, "operation name")
        if self.callee.kind is not AgentKind.OBJECT:
            raise ModelError(
                f"callee {self.callee.name!r} must be an object; only objects receive operations"
            )

    @property
    def signature(self) -> OpSignature:
        return OpSignature(self.op_name, self.params)


@dataclass(frozen=True)
class Transition:
    source: str
    interaction: Interaction
    target: str

    def __post_init__(self) -> None:
        _require_ident(self.source, "source state")
        _require_ident(self.target, "target state")


@dataclass(frozen=True)
class Itg:
    """One region: a labelled transition graph over interaction labels.

    Transition declaration order is significant (the sequence projection
    reads execution order straight off it).  ``states`` is stored in a
    canonical order: the initial state first, then states in order of
    first appearance on transitions, then any isolated extras in the
    order they were supplied.  Passing ``states=()`` infers the set from
    the initial state and the transition endpoints.
    """

    name: str
    initial: str
    transitions: tuple[Transition, ...] = ()
    states: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _require_ident(self.name, "region name")
        _require_ident(self.initial, "initial state")
        object.__setattr__(self, "transitions", tuple(self.transitions))
        supplied = tuple(self.states)

        canonical: list[str] = [self.initial]
        seen = {self.initial}
        for t in self.transitions:
            for endpoint in (t.source, t.target):
                if endpoint not in seen:
                    canonical.append(endpoint)
                    seen.add(endpoint)

        if supplied:
            if len(set(supplied)) != len(supplied):
                raise ModelError(f"duplicate state names in region {self.name!r}")
            missing = [s for s in canonical if s not in supplied]
            if missing:
                raise ModelError(
                    f"region {self.name!r}: states {missing} appear on transitions "
                    "(or as the initial state) but are not in the declared state set"
                )
            for s in supplied:
                _require_ident(s, "state name")
                if s not in seen:
                    canonical.append(s)
                    seen.add(s)
        object.__setattr__(self, "states", tuple(canonical))

        dup = _first_duplicate(self.transitions)
        if dup is not None:
            raise ModelError(
                f"region {self.name!r}: duplicate transition "
                f"{dup.source} -> {dup.target} : {dup.interaction.tag.value} {dup.interaction.op_name}"
            )

    def outgoing(self, state: str) -> tuple[Transition, ...]:
        """Transitions whose source is ``state``, in declaration order."""
        return tuple(t for t in self.transitions if t.source == state)


def _first_duplicate(transitions: tuple[Transition, ...]) -> Transition | None:
    seen: set[Transition] = set()
    for t in transitions:
        if t in seen:
            return t
        seen.add(t)
    return None


@dataclass(frozen=True)
class SystemItg:
    """An ordered list of regions under pure interleaving (an orthogonal
    composite state).  State names may repeat across regions; externally
    they are qualified as ``region.state``."""

    name: str
    regions: tuple[Itg, ...]

    def __post_init__(self) -> None:
        _require_ident(self.name, "system name")
        object.__setattr__(self, "regions", tuple(self.regions))
        if not self.regions:
            raise EmptyRegionListError("a system needs at least one region")
        names = [r.name for r in self.regions]
        for i, n in enumerate(names):
            if n in names[:i]:
                raise DuplicateRegionNameError(f"duplicate region name {n!r}")

    @property
    def transition_count(self) -> int:
        return sum(len(r.transitions) for r in self.regions)

    def region(self, name: str) -> Itg:
        for r in self.regions:
            if r.name == name:
                return r
        raise KeyError(name)


def compose(regions: Iterable[Itg], name: str) -> SystemItg:
    """Orthogonally compose regions into a system, preserving region order.

    Purely structural: no transitions are added, removed, or rewritten,
    and regions share no synchronization labels (pure interleaving).
    Raises EmptyRegionListError / DuplicateRegionNameError.
    """
    return SystemItg(name=name, regions=tuple(regions))


def merge_signatures(call: OpSignature, ret: OpSignature) -> OpSignature:
    """Merge a call signature with its return signature.

    The result keeps the operation name and lists the call parameters
    followed by the return parameters, order preserved.  A name occurring
    in both lists collapses to one parameter when direction and type are
    identical, and raises ParamConflictError otherwise.
    """
    if call.op_name != ret.op_name:
        raise NameMismatchError(
            f"cannot merge signatures of different operations: "
            f"{call.op_name!r} vs {ret.op_name!r}"
        )
    merged: list[Parameter] = list(call.params)
    by_name = {p.name: p for p in merged}
    for p in ret.params:
        existing = by_name.get(p.name)
        if existing is None:
            merged.append(p)
            by_name[p.name] = p
        elif existing != p:
            raise ParamConflictError(
                f"operation {call.op_name!r}: parameter {p.name!r} has conflicting "
                f"declarations ({existing.text!r} vs {p.text!r})"
            )
    return OpSignature(call.op_name, ParamList(tuple(merged)))
