"""Polynomial fast paths and the solver dispatcher.

With singleton parts the problem is plain vertex coloring, easy for one or
two colors. With parts of size at most two and one color it becomes 2-SAT:
part j is a variable x_j whose first vertex stands for x_j and second for
not x_j, and every edge forbids both endpoint literals at once.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from partcolor.core import (
    ORACLE_CAP,
    Coloring,
    PcpInstance,
    Selection,
    Solution,
    oracle_solve,
    selection_count,
)
from partcolor.errors import NotApplicable
from partcolor.exact import MEMORY_BUDGET, estimated_bytes, solve_exact
from partcolor.field import FieldSpec
from partcolor.lattice import LatticeShape

Literal = tuple[int, bool]  # (variable, polarity); True is the positive literal


@dataclass(frozen=True)
class TwoSatFormula:
    num_vars: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self):
        for clause in self.clauses:
            if not 1 <= len(clause) <= 2:
                raise ValueError(f"clause {clause} must have one or two literals")
            for var, _ in clause:
                if not 0 <= var < self.num_vars:
                    raise ValueError(f"variable {var} out of range")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[v] == pol for v, pol in clause) for clause in self.clauses)


def solve_q1(inst: PcpInstance) -> Solution:
    """Singleton parts with one or two colors: edgeless or bipartite test."""
    k = inst.effective_k
    if inst.q != 1 or k > 2:
        raise NotApplicable(f"solve_q1 needs q = 1 and k <= 2, got q = {inst.q}, k = {k}")
    chosen = Selection((0,) * inst.p)
    if k == 1:
        if inst.m:
            return Solution(verdict=False, solver_tag="q1", error_bound=0.0)
        return Solution(True, "q1", chosen, Coloring({v: 1 for v in range(inst.n)}), 0.0)

    color = [0] * inst.n
    neighbours = [[] for _ in range(inst.n)]
    for u, v in inst.edges:
        neighbours[u].append(v)
        neighbours[v].append(u)
    for root in range(inst.n):
        if color[root]:
            continue
        color[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in neighbours[u]:
                if not color[v]:
                    color[v] = 3 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return Solution(verdict=False, solver_tag="q1", error_bound=0.0)
    return Solution(True, "q1", chosen, Coloring(dict(enumerate(color))), 0.0)


def vertex_literals(inst: PcpInstance) -> list[Literal]:
    """Literal standing for each vertex: first of part j is x_j, second is not x_j."""
    literal: list[Literal] = [(0, True)] * inst.n
    for j, part in enumerate(inst.parts):
        for pos, v in enumerate(part):
            literal[v] = (j, pos == 0)
    return literal


def build_2sat(inst: PcpInstance) -> TwoSatFormula:
    """p vertex clauses (in part order) followed by one clause per edge."""
    if inst.q > 2:
        raise NotApplicable(f"2-SAT construction needs q <= 2, got q = {inst.q}")
    literal = vertex_literals(inst)
    clauses: list[tuple[Literal, ...]] = []
    for j, part in enumerate(inst.parts):
        clauses.append(tuple(literal[v] for v in part))
    for u, v in sorted(inst.edges):
        (a, pa), (b, pb) = literal[u], literal[v]
        clauses.append(((a, not pa), (b, not pb)))
    return TwoSatFormula(inst.p, tuple(clauses))


def _node(lit: Literal) -> int:
    var, pol = lit
    return 2 * var + (0 if pol else 1)


def solve_2sat(formula: TwoSatFormula) -> tuple[bool, ...] | None:
    """Implication graph plus Tarjan's strongly connected components.

    Returns an assignment, or ``None`` when unsatisfiable. Tautologies are
    skipped. Variable x is set true when its positive node's component comes
    earlier in Tarjan's completion order (later in topological order) than
    its negation's.
    """
    size = 2 * formula.num_vars
    graph: list[list[int]] = [[] for _ in range(size)]
    for clause in formula.clauses:
        if len(clause) == 1:
            a = _node(clause[0])
            graph[a ^ 1].append(a)
            continue
        a, b = _node(clause[0]), _node(clause[1])
        if a == b ^ 1:
            continue
        graph[a ^ 1].append(b)
        graph[b ^ 1].append(a)

    index = [-1] * size
    low = [0] * size
    comp = [-1] * size
    on_stack = [False] * size
    stack: list[int] = []
    counter = 0
    n_comp = 0
    for root in range(size):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            u, i = work[-1]
            if i < len(graph[u]):
                work[-1] = (u, i + 1)
                v = graph[u][i]
                if index[v] == -1:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                    work.append((v, 0))
                elif on_stack[v]:
                    low[u] = min(low[u], index[v])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
            if low[u] == index[u]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comp
                    if w == u:
                        break
                n_comp += 1

    assignment = []
    for var in range(formula.num_vars):
        pos, neg = comp[2 * var], comp[2 * var + 1]
        if pos == neg:
            return None
        assignment.append(pos < neg)
    return tuple(assignment)


def solve_q2k1(inst: PcpInstance) -> Solution:
    """Parts of size <= 2, one color: select the vertices whose literal is true."""
    if inst.q > 2 or inst.effective_k != 1:
        raise NotApplicable(f"solve_q2k1 needs q <= 2 and k = 1, got q = {inst.q}, k = {inst.k}")
    assignment = solve_2sat(build_2sat(inst))
    if assignment is None:
        return Solution(verdict=False, solver_tag="2sat", error_bound=0.0)
    chosen = tuple(0 if assignment[j] else 1 for j in range(inst.p))
    sel = Selection(chosen)
    return Solution(True, "2sat", sel, Coloring({v: 1 for v in sel.vertices(inst)}), 0.0)


@dataclass(frozen=True)
class DispatchConfig:
    oracle_threshold: int = 1 << 14
    oracle_cap: int = ORACLE_CAP
    repeats: int = 2
    exact_arith: bool = False
    seed: int | None = None
    memory_budget: int = MEMORY_BUDGET


def route(inst: PcpInstance, config: DispatchConfig = DispatchConfig()) -> str:
    """Name of the cheapest applicable solver.

    Tiny selection spaces go to the oracle; otherwise the lattice solver runs
    when its tables fit the memory budget, falling back to the oracle below
    its cap.
    """
    k = inst.effective_k
    if inst.q == 1 and k <= 2:
        return "q1"
    if inst.q <= 2 and k == 1:
        return "2sat"
    selections = selection_count(inst)
    if selections <= min(config.oracle_threshold, config.oracle_cap):
        return "oracle"
    fits = estimated_bytes(LatticeShape.from_instance(inst)) <= config.memory_budget
    if not fits and selections <= config.oracle_cap:
        return "oracle"
    return "exact"


def dispatch(inst: PcpInstance, config: DispatchConfig = DispatchConfig()) -> Solution:
    name = route(inst, config)
    if name == "q1":
        return solve_q1(inst)
    if name == "2sat":
        return solve_q2k1(inst)
    if name == "oracle":
        return oracle_solve(inst, config.oracle_cap)
    field = FieldSpec.exact() if config.exact_arith else None
    return solve_exact(inst, field, config.repeats, config.seed, config.memory_budget)
