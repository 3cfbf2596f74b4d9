"""Entropy-constrained spin-1/2 collapse model.

Core pieces: exact Bloch-sphere geometry, binary-entropy utilities, the
constrained solver for the post-measurement observer axis (grid and closed
form), boolean outcome policies, and the iterated-measurement automaton.
"""

from .automaton import ObserverAutomaton, RunResult, StepRecord
from .bloch import (
    Axis,
    SpinState,
    axes_up_overlap,
    axis_to_bloch,
    canonicalize_axis,
    eigenstate_as_state,
    eigenvectors,
    spin_operator,
    state_to_bloch,
    up_overlap_prob,
)
from .entropy import binary_entropy, collapse_entropies, entropy_pair_solutions
from .pfn import (
    BoolProjection,
    Measure,
    P_AND,
    P_OR,
    TruthTable,
    decide_outcome,
    outcome_probability,
    parse_expr,
    project_axis,
    render,
    to_cnf,
    to_dnf,
    to_truth_table,
)
from .solver import (
    CollapseSolution,
    LevelSetCurve,
    SolverConfig,
    Status,
    constraint_levels,
    solve_collapse,
    solve_collapse_closed_form,
    trace_level_sets,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BoolProjection",
    "CollapseSolution",
    "LevelSetCurve",
    "Measure",
    "ObserverAutomaton",
    "P_AND",
    "P_OR",
    "RunResult",
    "SolverConfig",
    "SpinState",
    "Status",
    "StepRecord",
    "TruthTable",
    "axes_up_overlap",
    "axis_to_bloch",
    "binary_entropy",
    "canonicalize_axis",
    "collapse_entropies",
    "constraint_levels",
    "decide_outcome",
    "eigenstate_as_state",
    "eigenvectors",
    "entropy_pair_solutions",
    "outcome_probability",
    "parse_expr",
    "project_axis",
    "render",
    "solve_collapse",
    "solve_collapse_closed_form",
    "spin_operator",
    "state_to_bloch",
    "to_cnf",
    "to_dnf",
    "to_truth_table",
    "trace_level_sets",
    "up_overlap_prob",
]
