"""Hardness reductions used as instance generators with known answers.

Every generator numbers its vertices in a fixed canonical order so that the
same input always yields byte-identical output files.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from partcolor.core import PcpInstance, make_instance
from partcolor.errors import BadTarget, ClauseTooWide, NotApplicable, TooManyVariables

ROLES = (
    "literal-layer",
    "middle-layer",
    "conflict-layer",
    "anchor-g",
    "anchor-r",
    "clique",
    "dummy",
    "copy",
)

SAT_BRUTEFORCE_LIMIT = 24


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of DIMACS-style literals: +v is x_v, -v its negation, v >= 1."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for t, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {t} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} in clause {t} outside 1..{self.num_vars}")

    @classmethod
    def of(cls, clauses: Iterable[Sequence[int]], num_vars: int | None = None) -> CnfFormula:
        clauses = tuple(tuple(c) for c in clauses)
        if num_vars is None:
            num_vars = max((abs(lit) for c in clauses for lit in c), default=0)
        return cls(num_vars, clauses)

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(lit) - 1] == (lit > 0) for lit in c) for c in self.clauses)


@dataclass(frozen=True)
class VertexOrigin:
    role: str
    clause: int | None = None
    position: int | None = None
    literal: int | None = None
    source: int | None = None
    copy: int | None = None

    def as_dict(self) -> dict:
        return {key: value for key, value in self.__dict__.items() if value is not None}


@dataclass(frozen=True)
class ReductionOutput:
    instance: PcpInstance
    provenance: tuple[VertexOrigin, ...]
    part_roles: tuple[str, ...]


def sat_bruteforce(phi: CnfFormula) -> tuple[bool, ...] | None:
    """First satisfying assignment in binary counting order, or ``None``."""
    if phi.num_vars > SAT_BRUTEFORCE_LIMIT:
        raise TooManyVariables(f"{phi.num_vars} variables exceed {SAT_BRUTEFORCE_LIMIT}")
    for bits in range(1 << phi.num_vars):
        assignment = tuple(bool(bits >> i & 1) for i in range(phi.num_vars))
        if phi.satisfied_by(assignment):
            return assignment
    return None


def _contrary_edges(occurrences: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Edges between every pair of (vertex, literal) occurrences with opposite literals."""
    by_var: dict[int, tuple[list[int], list[int]]] = {}
    for vertex, lit in occurrences:
        pos, neg = by_var.setdefault(abs(lit), ([], []))
        (pos if lit > 0 else neg).append(vertex)
    edges = []
    for var in sorted(by_var):
        pos, neg = by_var[var]
        edges.extend((u, v) for u in pos for v in neg)
    return edges


def reduce_3sat_to_pcp22(phi: CnfFormula) -> ReductionOutput:
    """3-SAT to two colors with parts of size at most two.

    Vertex ids: anchor g = 0, anchor r = 1, then nine ids per clause t at
    ``2 + 9t``: literal layer l1..l3, middle layer m1..m3, conflict layer
    c1..c3. Parts: {g}, {r}, then per clause {l1}, {l2}, {l3}, {m1, c1},
    {m2, c2}, {m3, c3}. Clauses shorter than three repeat their last literal.
    """
    clauses = []
    for t, clause in enumerate(phi.clauses):
        if len(clause) > 3:
            raise ClauseTooWide(f"clause {t} has {len(clause)} literals")
        clauses.append(tuple(clause) + (clause[-1],) * (3 - len(clause)))

    g, r = 0, 1
    provenance = [VertexOrigin("anchor-g"), VertexOrigin("anchor-r")]
    parts: list[list[int]] = [[g], [r]]
    part_roles = ["anchor-g", "anchor-r"]
    edges = [(g, r)]
    occurrences = []
    for t, clause in enumerate(clauses):
        base = 2 + 9 * t
        lits = [base + i for i in range(3)]
        mids = [base + 3 + i for i in range(3)]
        confs = [base + 6 + i for i in range(3)]
        for layer, ids in (("literal-layer", lits), ("middle-layer", mids), ("conflict-layer", confs)):
            provenance.extend(VertexOrigin(layer, t, i, clause[i]) for i in range(3))
        for i in range(3):
            edges.append((lits[i], mids[i]))
            edges.append((mids[i], g))
            occurrences.append((lits[i], clause[i]))
        edges.extend(itertools.combinations(confs, 2))
        parts.extend([v] for v in lits)
        parts.extend([mids[i], confs[i]] for i in range(3))
        part_roles.extend(["literal-layer"] * 3 + ["middle-layer"] * 3)
    edges.extend(_contrary_edges(occurrences))
    inst = make_instance(parts, edges, 2, n=2 + 9 * len(clauses))
    return ReductionOutput(inst, tuple(provenance), tuple(part_roles))


def reduce_qsat_to_pcpk1(phi: CnfFormula, q: int | None = None) -> ReductionOutput:
    """q-SAT to one color: a vertex per literal occurrence, a part per clause."""
    q = phi.width if q is None else q
    provenance = []
    parts = []
    occurrences = []
    for t, clause in enumerate(phi.clauses):
        if len(clause) > q:
            raise ClauseTooWide(f"clause {t} has {len(clause)} literals, bound is {q}")
        part = []
        for i, lit in enumerate(clause):
            v = len(provenance)
            provenance.append(VertexOrigin("literal-layer", t, i, lit))
            occurrences.append((v, lit))
            part.append(v)
        parts.append(part)
    edges = _contrary_edges(occurrences)
    inst = make_instance(parts, edges, 1, n=len(provenance))
    return ReductionOutput(inst, tuple(provenance), ("literal-layer",) * len(parts))


def reduce_is_to_pcp(
    n: int, edges: Iterable[tuple[int, int]], k_independent: int, k: int
) -> ReductionOutput:
    """Independent set of size ``k_independent`` in a graph on ``0..n-1`` to PCP.

    Copy c of vertex v gets id ``c * n + v``; the k - 1 clique vertices
    follow. Vertices in different copies are joined when they are the same
    or adjacent original vertex, and the clique is joined to every copy.
    Parts are the copies, then one singleton per clique vertex.
    """
    if k < 1 or k_independent < 1:
        raise ValueError("k and k_independent must be positive")
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    original = {(min(u, v), max(u, v)) for u, v in edges}
    close = original | {(v, v) for v in range(n)}

    def cid(c: int, v: int) -> int:
        return c * n + v

    out_edges = []
    for c in range(k_independent):
        out_edges.extend((cid(c, u), cid(c, v)) for u, v in sorted(original))
    for c1, c2 in itertools.combinations(range(k_independent), 2):
        for u, v in sorted(close):
            out_edges.append((cid(c1, u), cid(c2, v)))
            if u != v:
                out_edges.append((cid(c1, v), cid(c2, u)))
    clique = [k_independent * n + i for i in range(k - 1)]
    out_edges.extend(itertools.combinations(clique, 2))
    out_edges.extend((w, v) for w in clique for v in range(k_independent * n))

    parts = [[cid(c, v) for v in range(n)] for c in range(k_independent)]
    parts.extend([w] for w in clique)
    provenance = [VertexOrigin("copy", source=v, copy=c) for c in range(k_independent) for v in range(n)]
    provenance.extend(VertexOrigin("clique", position=i) for i in range(k - 1))
    inst = make_instance(parts, out_edges, k, n=k_independent * n + k - 1)
    roles = ("copy",) * k_independent + ("clique",) * (k - 1)
    return ReductionOutput(inst, tuple(provenance), roles)


def pad_instance(inst: PcpInstance, q_target: int, k_target: int) -> ReductionOutput:
    """Lift a two-color instance with parts of size <= 2 to larger q and k.

    Appends a clique on ``k_target - 2`` vertices joined to every original
    vertex (each in its own part), then one part of ``q_target`` isolated
    dummies. The answer is unchanged and p grows by ``k_target - 1``.
    """
    if q_target < 2 or k_target < 2:
        raise BadTarget(f"targets must be >= 2, got q = {q_target}, k = {k_target}")
    if inst.q > 2 or inst.k != 2:
        raise NotApplicable(f"padding needs q <= 2 and k = 2, got q = {inst.q}, k = {inst.k}")
    n = inst.n
    clique = [n + i for i in range(k_target - 2)]
    dummies = [n + len(clique) + i for i in range(q_target)]
    edges = list(inst.edges)
    edges.extend(itertools.combinations(clique, 2))
    edges.extend((w, v) for w in clique for v in range(n))
    parts = [list(part) for part in inst.parts]
    parts.extend([w] for w in clique)
    parts.append(dummies)
    provenance = [VertexOrigin("copy", source=v) for v in range(n)]
    provenance.extend(VertexOrigin("clique", position=i) for i in range(len(clique)))
    provenance.extend(VertexOrigin("dummy", position=i) for i in range(q_target))
    padded = make_instance(parts, edges, k_target, n=n + len(clique) + q_target)
    roles = ("copy",) * inst.p + ("clique",) * len(clique) + ("dummy",)
    return ReductionOutput(padded, tuple(provenance), roles)
