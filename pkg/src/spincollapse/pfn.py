"""Boolean outcome policies.

The collapse outcome (1 = up, 0 = down) is chosen by a boolean function of
the step-projected final angles (x, y) and, with memory depth n > 0, of the
projections and outcomes of the n previous measurements (x1, y1, s1, ...,
index 1 being the most recent).  Policies are built from expression text,
truth tables, or canonical DNF/CNF forms, and induce a geometric probability
of the up outcome under a measure on the axis chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import Axis

MAX_MEMORY_DEPTH = 4


# ---------------------------------------------------------------------------
# expression AST

class BoolExpr:
    def __call__(self, env: dict[str, int]) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(BoolExpr):
    value: int

    def __call__(self, env):
        return self.value

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var(BoolExpr):
    name: str

    def __call__(self, env):
        return env[self.name]

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(BoolExpr):
    arg: BoolExpr

    def __call__(self, env):
        return 1 - self.arg(env)

    def __str__(self):
        return f"!{self.arg}" if isinstance(self.arg, (Var, Const, Not)) \
            else f"!({self.arg})"


def _wrap(e: BoolExpr, tighter: tuple[type, ...]) -> str:
    return str(e) if isinstance(e, tighter) else f"({e})"


@dataclass(frozen=True)
class And(BoolExpr):
    left: BoolExpr
    right: BoolExpr

    def __call__(self, env):
        return self.left(env) & self.right(env)

    def __str__(self):
        inner = (Var, Const, Not, And)
        return f"{_wrap(self.left, inner)}&{_wrap(self.right, inner)}"


@dataclass(frozen=True)
class Xor(BoolExpr):
    left: BoolExpr
    right: BoolExpr

    def __call__(self, env):
        return self.left(env) ^ self.right(env)

    def __str__(self):
        inner = (Var, Const, Not, And, Xor)
        return f"{_wrap(self.left, inner)}^{_wrap(self.right, inner)}"


@dataclass(frozen=True)
class Or(BoolExpr):
    left: BoolExpr
    right: BoolExpr

    def __call__(self, env):
        return self.left(env) | self.right(env)

    def __str__(self):
        return f"{self.left}|{self.right}"


P_OR = Or(Var("x"), Var("y"))
P_AND = And(Var("x"), Var("y"))


# ---------------------------------------------------------------------------
# parsing

class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ExprArityError(ValueError):
    pass


def variable_order(n: int) -> list[str]:
    """Fixed variable order: current projections first, then per-memory-slot
    (projection pair, outcome), most recent slot first."""
    names = ["x", "y"]
    for k in range(1, n + 1):
        names += [f"x{k}", f"y{k}", f"s{k}"]
    return names


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.pos = 0

    def error(self, msg: str):
        raise ExprSyntaxError(msg, self.pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> BoolExpr:
        e = self.or_expr()
        if self.peek():
            self.error(f"unexpected {self.text[self.pos]!r}")
        return e

    def or_expr(self) -> BoolExpr:
        e = self.xor_expr()
        while self.peek() == "|":
            self.pos += 1
            e = Or(e, self.xor_expr())
        return e

    def xor_expr(self) -> BoolExpr:
        e = self.and_expr()
        while self.peek() == "^":
            self.pos += 1
            e = Xor(e, self.and_expr())
        return e

    def and_expr(self) -> BoolExpr:
        e = self.factor()
        while self.peek() == "&":
            self.pos += 1
            e = And(e, self.factor())
        return e

    def factor(self) -> BoolExpr:
        ch = self.peek()
        if ch == "!":
            self.pos += 1
            return Not(self.factor())
        if ch == "(":
            self.pos += 1
            e = self.or_expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return e
        if ch and ch in "01":
            self.pos += 1
            return Const(int(ch))
        if ch and ch in "xys":
            start = self.pos
            self.pos += 1
            digits = ""
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                digits += self.text[self.pos]
                self.pos += 1
            if digits:
                k = int(digits)
                if k < 1 or k > self.n:
                    raise ExprArityError(
                        f"variable {ch}{k} exceeds memory depth {self.n}")
                return Var(f"{ch}{k}")
            if ch == "s":
                self.pos = start
                self.error("bare 's' needs a memory index")
            return Var(ch)
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def parse_expr(text: str, n: int = 0) -> BoolExpr:
    """Parse an outcome-policy expression.

    Grammar: OR is the loosest operator, then XOR, then AND, then NOT.
    Variables are x, y and (for memory depth n >= 1) x1..xn, y1..yn, s1..sn.
    """
    if not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    if not 0 <= n <= MAX_MEMORY_DEPTH:
        raise ValueError(f"memory depth must be in [0, {MAX_MEMORY_DEPTH}]")
    return _Parser(text, n).parse()


def render(e: BoolExpr) -> str:
    return str(e)


# ---------------------------------------------------------------------------
# truth tables

@dataclass(frozen=True)
class TruthTable:
    """Exhaustive value table over the fixed variable order, row 0 being the
    all-zero assignment and x the most significant bit."""

    memory_depth: int
    bits: tuple[int, ...]

    def __post_init__(self):
        n = self.memory_depth
        if not 0 <= n <= MAX_MEMORY_DEPTH:
            raise ValueError(f"memory depth must be in [0, {MAX_MEMORY_DEPTH}]")
        if len(self.bits) != 1 << (2 + 3 * n):
            raise ValueError(
                f"table for depth {n} needs {1 << (2 + 3 * n)} rows, "
                f"got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("table entries must be bits")

    def to_hex(self) -> str:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return f"{value:x}"

    @classmethod
    def from_hex(cls, text: str, n: int) -> "TruthTable":
        length = 1 << (2 + 3 * n)
        value = int(text, 16)
        if value >= 1 << length:
            raise ValueError(f"hex table too long for memory depth {n}")
        bits = tuple((value >> (length - 1 - k)) & 1 for k in range(length))
        return cls(n, bits)


def _row_env(row: int, names: list[str]) -> dict[str, int]:
    width = len(names)
    return {name: (row >> (width - 1 - k)) & 1 for k, name in enumerate(names)}


def to_truth_table(e: BoolExpr, n: int = 0) -> TruthTable:
    if n > MAX_MEMORY_DEPTH:
        raise ValueError(f"memory depth {n} exceeds cap {MAX_MEMORY_DEPTH}")
    names = variable_order(n)
    try:
        bits = tuple(e(_row_env(row, names)) for row in range(1 << len(names)))
    except KeyError as exc:
        raise ExprArityError(
            f"variable {exc.args[0]} exceeds memory depth {n}") from None
    return TruthTable(n, bits)


def _literal(name: str, bit: int) -> BoolExpr:
    return Var(name) if bit else Not(Var(name))


def to_dnf(t: TruthTable) -> BoolExpr:
    """Canonical minterm expansion: one conjunct per 1-row."""
    names = variable_order(t.memory_depth)
    terms: list[BoolExpr] = []
    for row, b in enumerate(t.bits):
        if not b:
            continue
        env = _row_env(row, names)
        term: BoolExpr = _literal(names[0], env[names[0]])
        for name in names[1:]:
            term = And(term, _literal(name, env[name]))
        terms.append(term)
    if not terms:
        return Const(0)
    expr = terms[0]
    for term in terms[1:]:
        expr = Or(expr, term)
    return expr


def to_cnf(t: TruthTable) -> BoolExpr:
    """Canonical maxterm expansion: one disjunct per 0-row."""
    names = variable_order(t.memory_depth)
    clauses: list[BoolExpr] = []
    for row, b in enumerate(t.bits):
        if b:
            continue
        env = _row_env(row, names)
        clause: BoolExpr = _literal(names[0], 1 - env[names[0]])
        for name in names[1:]:
            clause = Or(clause, _literal(name, 1 - env[name]))
        clauses.append(clause)
    if not clauses:
        return Const(1)
    expr = clauses[0]
    for clause in clauses[1:]:
        expr = And(expr, clause)
    return expr


# ---------------------------------------------------------------------------
# projections and outcomes

@dataclass(frozen=True)
class BoolProjection:
    xi: int
    eta: int

    def __post_init__(self):
        if self.xi not in (0, 1) or self.eta not in (0, 1):
            raise ValueError("projection bits must be 0 or 1")


def _step(x: float) -> int:
    # angles at exactly pi/2 must project to 0; snap cosine rounding noise
    if abs(x) < 1e-12:
        x = 0.0
    return 1 if x > 0.0 else 0


def project_axis(a: Axis) -> BoolProjection:
    """Step projections of the axis angles: 1 iff the cosine is positive."""
    return BoolProjection(_step(math.cos(a.theta)), _step(math.cos(a.phi)))


class HistoryError(ValueError):
    pass


def decide_outcome(e: BoolExpr, axis_f: Axis,
                   history: list[tuple[BoolProjection, int]] | None = None,
                   n: int = 0) -> int:
    """Evaluate the policy at the final axis; history is most recent first."""
    history = history or []
    if len(history) < n:
        raise HistoryError(
            f"memory depth {n} needs {n} history records, got {len(history)}")
    proj = project_axis(axis_f)
    env = {"x": proj.xi, "y": proj.eta}
    for k in range(1, n + 1):
        p, outcome = history[k - 1]
        env[f"x{k}"] = p.xi
        env[f"y{k}"] = p.eta
        env[f"s{k}"] = outcome
    return e(env)


# ---------------------------------------------------------------------------
# geometric outcome probabilities

@dataclass(frozen=True)
class Measure:
    kind: str  # chart_uniform | sphere_area

    def __post_init__(self):
        if self.kind not in ("chart_uniform", "sphere_area"):
            raise ValueError(f"unknown measure {self.kind!r}")


CHART_UNIFORM = Measure("chart_uniform")
SPHERE_AREA = Measure("sphere_area")


def outcome_probability(e: BoolExpr, measure: Measure = CHART_UNIFORM,
                        method: str = "analytic", samples: int = 1_000_000,
                        seed: int = 0, n: int = 0) -> float:
    """Probability of the up outcome for a random axis under the measure.

    Analytic route (memoryless only): the chart splits into four quadrants at
    theta = pi/2 and phi = pi/2 on which the projections are constant, and
    both measures weight each quadrant 1/4, so the probability is the number
    of 1-rows over 4.  Monte Carlo draws axes from the measure with a seeded
    generator; memory variables are sampled uniformly.
    """
    if method == "analytic":
        if n != 0:
            raise ValueError("analytic route requires a memoryless policy")
        table = to_truth_table(e, 0)
        return sum(table.bits) / 4.0
    if method != "monte_carlo":
        raise ValueError(f"unknown method {method!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")

    rng = np.random.default_rng(seed)
    if measure.kind == "chart_uniform":
        thetas = rng.uniform(0.0, math.pi, samples)
    else:
        thetas = np.arccos(rng.uniform(-1.0, 1.0, samples))
    phis = rng.uniform(0.0, math.pi, samples)
    env = {
        "x": (np.cos(thetas) > 0.0).astype(np.int64),
        "y": (np.cos(phis) > 0.0).astype(np.int64),
    }
    for k in range(1, n + 1):
        env[f"x{k}"] = rng.integers(0, 2, samples)
        env[f"y{k}"] = rng.integers(0, 2, samples)
        env[f"s{k}"] = rng.integers(0, 2, samples)
    values = e(env)
    return float(np.mean(values))
