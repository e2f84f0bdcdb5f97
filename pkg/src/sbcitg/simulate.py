"""Execution of a composed system as a labelled transition system.

Each region keeps its own active state; at every step all transitions
leaving any region's active state are enabled, and one is chosen
uniformly at random ("arbitrary and fair").  The random source is pinned
to SplitMix64 with rejection-sampled bounded draws so that any
implementation following the same recipe reproduces traces bit-for-bit:

* advance: ``state = (state + 0x9E3779B97F4A7C15) mod 2**64``
* output:  ``z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)``
  (all arithmetic mod 2**64)
* bounded draw below n: redraw while the output is >= the largest
  multiple of n that fits in 64 bits, then reduce modulo n.

A state with no enabled transition deadlocks; that is a normal terminal
outcome (Halted), not an error.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .core import Interaction, SystemItg, Transition

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass(frozen=True)
class RngState:
    """Immutable SplitMix64 state; every draw returns the advanced state."""

    state: int

    def __post_init__(self) -> None:
        if not 0 <= self.state <= _MASK64:
            raise ValueError("RNG state must be a 64-bit unsigned integer")

    @classmethod
    def from_seed(cls, seed: int) -> RngState:
        return cls(seed & _MASK64)

    def next_u64(self) -> tuple[int, RngState]:
        state = (self.state + _GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31), RngState(state)

    def next_below(self, n: int) -> tuple[int, RngState]:
        """Unbiased draw in [0, n): rejection sampling kills modulo bias."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        rng = self
        while True:
            draw, rng = rng.next_u64()
            if draw < limit:
                return draw % n, rng


@dataclass(frozen=True)
class CompositeState:
    """One active state per region, in region order."""

    per_region: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_region", tuple(self.per_region))

    def state_of(self, region: str) -> str:
        for name, state in self.per_region:
            if name == region:
                return state
        raise KeyError(region)

    def replace(self, region: str, state: str) -> CompositeState:
        return CompositeState(
            tuple((n, state if n == region else s) for n, s in self.per_region)
        )

    @property
    def text(self) -> str:
        """Qualified form: comma-joined ``region.state`` pairs."""
        return ",".join(f"{n}.{s}" for n, s in self.per_region)


@dataclass(frozen=True)
class TraceStep:
    step_index: int  # 1-based
    region: str
    interaction: Interaction
    before: CompositeState
    after: CompositeState

    def __post_init__(self) -> None:
        if self.step_index < 1:
            raise ValueError("step_index starts at 1")


@dataclass(frozen=True)
class Trace:
    steps: tuple[TraceStep, ...]
    halted: bool = False


class Halted(Exception):
    """No transition is enabled in the current composite state."""


def initial_state(system: SystemItg) -> CompositeState:
    return CompositeState(tuple((r.name, r.initial) for r in system.regions))


def _check_composite(system: SystemItg, cs: CompositeState) -> None:
    names = tuple(r.name for r in system.regions)
    if tuple(n for n, _ in cs.per_region) != names:
        raise ValueError(
            f"composite state regions {[n for n, _ in cs.per_region]} do not match "
            f"system regions {list(names)}"
        )
    for region, state in zip(system.regions, cs.per_region):
        if state[1] not in region.states:
            raise ValueError(f"state {state[1]!r} is not in region {region.name!r}")


def enabled(system: SystemItg, cs: CompositeState) -> list[tuple[str, Transition]]:
    """All fireable transitions, in (region order, declaration order)."""
    _check_composite(system, cs)
    out: list[tuple[str, Transition]] = []
    for region in system.regions:
        active = cs.state_of(region.name)
        for t in region.transitions:
            if t.source == active:
                out.append((region.name, t))
    return out


def step(
    system: SystemItg, cs: CompositeState, rng: RngState, step_index: int = 1
) -> tuple[TraceStep, CompositeState, RngState]:
    """Fire one uniformly chosen enabled transition.

    Only the chosen region's active state moves; all other regions are
    untouched.  Raises Halted when nothing is enabled.
    """
    choices = enabled(system, cs)
    if not choices:
        raise Halted(f"deadlock at {cs.text}")
    pick, rng = rng.next_below(len(choices))
    region, transition = choices[pick]
    after = cs.replace(region, transition.target)
    return TraceStep(step_index, region, transition.interaction, cs, after), after, rng


def run(system: SystemItg, steps: int, seed: int) -> Trace:
    """Simulate from the initial composite state for at most ``steps``
    steps; stops early (with the halted flag set) on deadlock.  The triple
    (system, steps, seed) fully determines the trace."""
    if steps < 0:
        raise ValueError("step count must be non-negative")
    rng = RngState.from_seed(seed)
    cs = initial_state(system)
    out: list[TraceStep] = []
    for i in range(1, steps + 1):
        try:
            trace_step, cs, rng = step(system, cs, rng, step_index=i)
        except Halted:
            return Trace(tuple(out), halted=True)
        out.append(trace_step)
    return Trace(tuple(out))


def format_trace_step(s: TraceStep) -> str:
    ia = s.interaction
    return (
        f"{s.step_index} {s.region} {ia.tag.value} {ia.caller.text} -> "
        f"{ia.callee.text} . {ia.op_name}({ia.params.text}) "
        f"[{s.before.text} => {s.after.text}]"
    )


def format_trace(trace: Trace) -> str:
    """One line per step; a halted run is flagged by a trailing marker."""
    lines = [format_trace_step(s) for s in trace.steps]
    if trace.halted:
        lines.append("-- halted: no enabled transitions")
    return "\n".join(lines) + ("\n" if lines else "")


def trace_to_json(trace: Trace) -> str:
    """JSON mirror of the text trace."""
    steps = [
        {
            "index": s.step_index,
            "region": s.region,
            "N": s.interaction.tag.value,
            "XI": s.interaction.caller.text,
            "LAMBDA": s.interaction.op_name,
            "THETA": s.interaction.params.text,
            "GAMMA": s.interaction.callee.text,
            "before": dict(s.before.per_region),
            "after": dict(s.after.per_region),
        }
        for s in trace.steps
    ]
    return json.dumps({"steps": steps, "halted": trace.halted}, indent=2) + "\n"
