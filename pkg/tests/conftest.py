"""Shared helpers: random instance sampling and independent oracles."""

import math

import numpy as np
import pytest

from spincollapse.bloch import (
    Axis,
    SpinState,
    axis_to_bloch,
    canonicalize_axis,
    state_to_bloch,
)


def random_instance(rng) -> tuple[Axis, SpinState]:
    """A uniformly drawn (axis, state) pair on the chart / parameter box."""
    theta = rng.uniform(0.0, math.pi)
    phi = rng.uniform(0.0, math.pi)
    rho = rng.uniform(0.0, 1.0)
    tau = rng.uniform(0.0, 2.0 * math.pi)
    return canonicalize_axis(theta, phi), SpinState(rho, tau)


def is_nondegenerate(axis: Axis, state: SpinState) -> bool:
    """Reject instances near a status or selection boundary.

    The grid and closed-form routes are only required to agree away from
    configuration boundaries: near-trivial alignments, axes whose Bloch line
    grazes the chart edge, constraint circles tangent to the chart, and
    reflections landing on the chart seam all make the answer discontinuous
    in the inputs.
    """
    m = state_to_bloch(state)
    ni = axis_to_bloch(axis)
    c = ni[0] * m[0] + ni[1] * m[1] + ni[2] * m[2]
    if not 2e-3 < abs(c) < 0.95:
        return False
    if ni[1] <= 1e-3:
        return False
    root = math.sqrt(max(0.0, 1.0 - c * c))
    flip_max_y = -c * m[1] + root * math.sqrt(max(0.0, 1.0 - m[1] * m[1]))
    if abs(flip_max_y) <= 1e-3:
        return False
    nstar_y = ni[1] - 2.0 * c * m[1]
    if abs(nstar_y) <= 1e-3:
        return False
    return True


def nondegenerate_instances(seed: int, count: int) -> list[tuple[Axis, SpinState]]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        axis, state = random_instance(rng)
        if is_nondegenerate(axis, state):
            out.append((axis, state))
    return out


def eigvec_overlap_oracle(axis: Axis, state: SpinState) -> float:
    """Independent |<up_f|psi>|^2 oracle from raw complex-vector arithmetic."""
    up = np.array([math.cos(axis.theta / 2.0) * np.exp(-1j * axis.phi),
                   math.sin(axis.theta / 2.0)])
    psi = np.array([math.sqrt(state.rho) * np.exp(-1j * state.tau),
                    math.sqrt(1.0 - state.rho)])
    return float(abs(np.vdot(up, psi)) ** 2)


@pytest.fixture(scope="session")
def oracle_instances():
    """The criterion-3 corpus: 1000 seeded non-degenerate instances."""
    return nondegenerate_instances(seed=20240817, count=1000)
