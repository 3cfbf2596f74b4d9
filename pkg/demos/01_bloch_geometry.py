"""Tour of the geometry layer: chart canonicalization, Bloch vectors,
eigenvectors, and the overlap probability.

Run:  python3 demos/01_bloch_geometry.py
"""

import math

import numpy as np

from spincollapse import (
    SpinState,
    axis_to_bloch,
    canonicalize_axis,
    eigenvectors,
    spin_operator,
    state_to_bloch,
    up_overlap_prob,
)

PI = math.pi


def main():
    print("== Axes live on the restricted chart [0, pi) x [0, pi) ==")
    a = canonicalize_axis(PI / 4, PI / 2)
    print(f"(pi/4, pi/2)      -> theta={a.theta:.4f} phi={a.phi:.4f} "
          f"swapped={a.labels_swapped}")
    b = canonicalize_axis(3 * PI / 4, 3 * PI / 2)
    print(f"(3pi/4, 3pi/2)    -> theta={b.theta:.4f} phi={b.phi:.4f} "
          f"swapped={b.labels_swapped}   (antipodal fold)")
    pole = canonicalize_axis(0.0, 2.1)
    print(f"(0, 2.1)          -> theta={pole.theta:.4f} phi={pole.phi:.4f} "
          f"(pole convention: phi is meaningless at the pole)")

    print("\n== Bloch vectors ==")
    print(f"axis  (pi/4, pi/2) -> n = {np.round(axis_to_bloch(a), 4)}")
    s = SpinState(0.4, 0.0)
    print(f"state (0.4, 0)     -> m = {np.round(state_to_bloch(s), 4)}")

    print("\n== Eigenvectors and the spin operator ==")
    up, down = eigenvectors(a)
    op = np.array(spin_operator(a))
    print(f"up   = {np.round(up, 4)}")
    print(f"down = {np.round(down, 4)}")
    print(f"op @ up  - up  -> {np.round(op @ np.array(up) - up, 12)}")
    print(f"<up|down>      -> {abs(np.vdot(up, down)):.2e}")

    print("\n== Overlap probability (the up-outcome chance) ==")
    p = up_overlap_prob(a, s)
    n = np.array(axis_to_bloch(a))
    m = np.array(state_to_bloch(s))
    print(f"direct formula : {p:.6f}")
    print(f"(1 + n.m)/2    : {0.5 * (1 + n @ m):.6f}   (same number)")


if __name__ == "__main__":
    main()
