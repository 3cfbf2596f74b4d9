"""Boolean outcome policies: parsing, truth tables, DNF/CNF, and the
geometric probability of the up outcome they induce.

Run:  python3 demos/04_outcome_policies.py
"""

from spincollapse import (
    outcome_probability,
    parse_expr,
    render,
    to_cnf,
    to_dnf,
    to_truth_table,
)
from spincollapse.pfn import CHART_UNIFORM, SPHERE_AREA


def main():
    print("== Expressions, truth tables, normal forms ==")
    for text in ("x|y", "x&y", "x^y", "!x&y|x"):
        e = parse_expr(text)
        t = to_truth_table(e)
        print(f"{text:10} bits={t.bits} hex={t.to_hex()}")
        print(f"{'':10} dnf: {render(to_dnf(t))}")
        print(f"{'':10} cnf: {render(to_cnf(t))}")

    print("\n== Memory: the policy can read the previous measurement ==")
    e = parse_expr("s1 & !x1 | y", 1)
    t = to_truth_table(e, 1)
    print(f"'s1 & !x1 | y' at depth 1: 32-row table, hex={t.to_hex()}")

    print("\n== Induced outcome probabilities ==")
    print("a random final axis lands in one of four chart quadrants with")
    print("probability 1/4 each, so P(up) = (#1-rows)/4:")
    for text in ("x|y", "x&y", "x^y", "1"):
        e = parse_expr(text)
        analytic = outcome_probability(e)
        mc_chart = outcome_probability(e, CHART_UNIFORM, "monte_carlo",
                                       samples=200_000, seed=42)
        mc_sphere = outcome_probability(e, SPHERE_AREA, "monte_carlo",
                                        samples=200_000, seed=42)
        print(f"  P(up | {text:4}) = {analytic:.2f}   "
              f"MC chart {mc_chart:.4f}, MC sphere {mc_sphere:.4f}")
    print("the OR policy biases outcomes toward up (0.75, not 0.5): the")
    print("policy choice deforms the outcome measure.")


if __name__ == "__main__":
    main()
