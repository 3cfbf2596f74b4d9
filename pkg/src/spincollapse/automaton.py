"""Iterated-measurement automaton.

A Mealy-style transducer: the internal state is the observer's measurement
axis, the transition is the entropy-constrained collapse solve, and the
output is chosen by the boolean outcome policy.  Each collapse feeds its
eigenstate back in as the next input, so a run traces the recurrence until a
trivial or death-point configuration halts it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .bloch import Axis, SpinState, eigenstate_as_state, up_overlap_prob
from .entropy import binary_entropy
from .pfn import BoolExpr, BoolProjection, HistoryError, decide_outcome, \
    project_axis, to_truth_table
from .solver import CollapseSolution, SolverConfig, Status, \
    solve_collapse, solve_collapse_closed_form


@dataclass
class StepRecord:
    step_index: int
    state_before: SpinState
    axis_before: Axis
    status: Status
    axis_after: Axis
    outcome: Optional[int]
    state_after: SpinState
    s_i: float
    s_up: float
    world_id: str

    def to_json_dict(self) -> dict:
        return {
            "step": self.step_index,
            "status": self.status.value,
            "theta_i": self.axis_before.theta,
            "phi_i": self.axis_before.phi,
            "theta_f": self.axis_after.theta,
            "phi_f": self.axis_after.phi,
            "outcome": self.outcome,
            "rho_before": self.state_before.rho,
            "tau_before": self.state_before.tau,
            "rho_after": self.state_after.rho,
            "tau_after": self.state_after.tau,
            "s_i": self.s_i,
            "s_up": self.s_up,
            "world_id": self.world_id,
        }


@dataclass
class RunResult:
    records: list[StepRecord]
    halted: bool
    halt_reason: str  # death_point | trivial | max_steps
    death_step: Optional[int] = None

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_json_dict(), sort_keys=False) + "\n"
                       for r in self.records)


@dataclass
class WorldSwitch:
    step_index: int
    old_world_id: str
    new_world_id: str


class ObserverAutomaton:
    """Single-writer state machine; concurrent runs need separate instances."""

    def __init__(self, axis: Axis, pfn: BoolExpr, memory_depth: int = 0,
                 solver_cfg: SolverConfig | None = None,
                 world_id: str = "world-0",
                 seed_history: list[tuple[BoolProjection, int]] | None = None):
        if memory_depth > 0 and len(seed_history or []) < memory_depth:
            raise HistoryError(
                f"memory depth {memory_depth} requires seeded history")
        to_truth_table(pfn, memory_depth)  # validates variable arity
        self.current_axis = axis
        self.pfn = pfn
        self.memory_depth = memory_depth
        self.solver_cfg = solver_cfg or SolverConfig()
        self.world_id = world_id
        self.history: list[tuple[BoolProjection, int]] = \
            list(seed_history or [])[:memory_depth]
        self.halted = False
        self.halt_reason: Optional[str] = None
        self.world_switches: list[WorldSwitch] = []
        self._step_count = 0

    def _solve(self, state: SpinState) -> CollapseSolution:
        if self.solver_cfg.method == "closed_form":
            return solve_collapse_closed_form(self.current_axis, state,
                                              self.solver_cfg)
        return solve_collapse(self.current_axis, state, self.solver_cfg)

    def step(self, input_state: SpinState) -> tuple[SpinState, StepRecord]:
        """One measurement: transition the axis, decide the outcome, collapse
        the state.  Trivial and death-point configurations halt the machine
        and pass the state through unchanged."""
        self._step_count += 1
        axis_before = self.current_axis
        sol = self._solve(input_state)
        if sol.status is Status.NORMAL:
            outcome = decide_outcome(self.pfn, sol.axis_f, self.history,
                                     self.memory_depth)
            output_state = eigenstate_as_state(sol.axis_f, outcome)
            if self.memory_depth > 0:
                self.history = ([(project_axis(sol.axis_f), outcome)]
                                + self.history)[:self.memory_depth]
            self.current_axis = sol.axis_f
        else:
            outcome = None
            output_state = input_state
            self.halted = True
            self.halt_reason = ("trivial" if sol.status is Status.TRIVIAL
                                else "death_point")
        record = StepRecord(
            step_index=self._step_count,
            state_before=input_state,
            axis_before=axis_before,
            status=sol.status,
            axis_after=sol.axis_f,
            outcome=outcome,
            state_after=output_state,
            s_i=sol.s_i,
            s_up=sol.s_up,
            world_id=self.world_id,
        )
        return output_state, record

    def run(self, initial_state: SpinState, max_steps: int) -> RunResult:
        """Iterate step, feeding each output state back as the next input."""
        if max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        records: list[StepRecord] = []
        state = initial_state
        death_step = None
        for _ in range(max_steps):
            state, record = self.step(state)
            records.append(record)
            if self.halted:
                if record.status is Status.DEATH_POINT:
                    death_step = record.step_index
                break
        reason = self.halt_reason if self.halted else "max_steps"
        return RunResult(records, self.halted, reason, death_step)

    def switch_world(self, new_pfn: BoolExpr, new_world_id: str) -> None:
        """Replace the outcome policy; the axis, history and halt state are
        untouched (the transition does not depend on the policy, so switching
        cannot un-halt the machine)."""
        to_truth_table(new_pfn, self.memory_depth)  # arity check
        self.world_switches.append(
            WorldSwitch(self._step_count, self.world_id, new_world_id))
        self.pfn = new_pfn
        self.world_id = new_world_id


def replay_entropies(record: StepRecord) -> tuple[float, float]:
    """Recompute (S_i, S_f) of a record from first principles."""
    s_i = binary_entropy(up_overlap_prob(record.axis_before,
                                         record.state_before))
    s_f = binary_entropy(up_overlap_prob(record.axis_after,
                                         record.state_before))
    return s_i, s_f
