"""Text formats: PCP instance files, DIMACS CNF, edge lists, result records.

Instance files use 1-based ids::

    c optional comment lines
    p pcp <n> <p> <k>
    v <vertex> <part>      one line per vertex; order within a part is kept
    e <u> <v>              one line per edge

In memory everything is 0-based. Validation errors raised while reading a
file name entities by their file (1-based) ids.
"""

from __future__ import annotations

import json
from collections.abc import Iterable

from partcolor.core import PcpInstance, Solution, validate_instance
from partcolor.errors import BadBudget, EmptyPart, InstanceSyntaxError, InvalidInstance
from partcolor.lattice import LatticeShape
from partcolor.reductions import CnfFormula, ReductionOutput

RESULT_SCHEMA = "partcolor.result/1"
PROVENANCE_SCHEMA = "partcolor.provenance/1"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceSyntaxError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def _to_file_ids(err: InvalidInstance) -> InvalidInstance:
    entity = err.entity
    if isinstance(entity, tuple):
        entity = tuple(x + 1 if isinstance(x, int) else x for x in entity)
    elif isinstance(entity, int):
        entity = entity + 1
    return type(err)(entity)


def parse_instance(text: str) -> PcpInstance:
    header = None
    assigned: list[tuple[int, int]] = []
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if header is not None:
                raise InstanceSyntaxError(lineno, "second header line")
            if len(tokens) != 5 or tokens[1] != "pcp":
                raise InstanceSyntaxError(lineno, "header must read 'p pcp <n> <p> <k>'")
            header = _ints(tokens[2:], lineno)
            continue
        if header is None:
            raise InstanceSyntaxError(lineno, "data before the 'p pcp' header")
        if tag not in ("v", "e") or len(tokens) != 3:
            raise InstanceSyntaxError(lineno, f"unrecognised line {line.strip()!r}")
        a, b = _ints(tokens[1:], lineno)
        if tag == "v":
            if not 1 <= b <= header[1]:
                raise InstanceSyntaxError(lineno, f"part id {b} outside 1..{header[1]}")
            assigned.append((a - 1, b - 1))
        else:
            edges.append((a - 1, b - 1))
    if header is None:
        raise InstanceSyntaxError(0, "missing 'p pcp' header")
    n, p, k = header
    parts: list[list[int]] = [[] for _ in range(max(p, 0))]
    for v, part in assigned:
        parts[part].append(v)
    try:
        for i, part in enumerate(parts):
            if not part:
                raise EmptyPart(i)
        return validate_instance({"n": n, "parts": parts, "edges": edges, "k": k})
    except InvalidInstance as err:
        if type(err) in (InvalidInstance, BadBudget):
            raise
        raise _to_file_ids(err) from None


def serialize_instance(inst: PcpInstance, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p pcp {inst.n} {inst.p} {inst.k}")
    for i, part in enumerate(inst.parts):
        lines.extend(f"v {v + 1} {i + 1}" for v in part)
    lines.extend(f"e {u + 1} {v + 1}" for u, v in sorted(inst.edges))
    return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "%":
            break
        if tokens[0] == "p":
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise InstanceSyntaxError(lineno, "header must read 'p cnf <vars> <clauses>'")
            num_vars = _ints(tokens[2:3], lineno)[0]
            continue
        for lit in _ints(tokens, lineno):
            if lit == 0:
                if not current:
                    raise InstanceSyntaxError(lineno, "empty clause")
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    try:
        return CnfFormula.of(clauses, num_vars)
    except ValueError as err:
        raise InstanceSyntaxError(0, str(err)) from None


def serialize_dimacs_cnf(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines.extend(" ".join(map(str, clause)) + " 0" for clause in phi.clauses)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, n: int | None = None) -> tuple[int, list[tuple[int, int]]]:
    """Read ``<u> <v>`` lines (1-based); ``e`` prefixes and a ``p edge n m`` header are accepted.

    Returns the vertex count and 0-based edges. Without a header or an
    explicit ``n`` the count is the largest id seen.
    """
    edges = []
    declared = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] in ("c", "#"):
            continue
        if tokens[0] == "p":
            if len(tokens) < 3:
                raise InstanceSyntaxError(lineno, "header must read 'p edge <n> <m>'")
            declared = _ints(tokens[2:3], lineno)[0]
            continue
        if tokens[0] == "e":
            tokens = tokens[1:]
        if len(tokens) != 2:
            raise InstanceSyntaxError(lineno, f"expected '<u> <v>', got {line.strip()!r}")
        u, v = _ints(tokens, lineno)
        if u < 1 or v < 1:
            raise InstanceSyntaxError(lineno, "vertex ids are 1-based")
        edges.append((u - 1, v - 1))
    count = n if n is not None else declared
    if count is None:
        count = max((max(e) + 1 for e in edges), default=0)
    return count, edges


def result_record(inst: PcpInstance, solution: Solution, wall_time: float | None = None) -> dict:
    """Schema-versioned summary of one run; certificate ids are 1-based."""
    certificate = None
    if solution.certificate is not None:
        sel, col = solution.certificate
        vertices = sel.vertices(inst)
        certificate = {
            "selection": {str(i + 1): v + 1 for i, v in enumerate(vertices)},
            "coloring": {str(v + 1): col.assignment[v] for v in vertices},
        }
    return {
        "schema": RESULT_SCHEMA,
        "verdict": "yes" if solution.verdict else "no",
        "solver": solution.solver_tag,
        "instance": {"n": inst.n, "m": inst.m, "p": inst.p, "q": inst.q, "k": inst.k},
        "certificate": certificate,
        "wall_time": wall_time,
        "lattice_size": LatticeShape.from_instance(inst).size,
        "primes": list(solution.primes),
        "error_bound": solution.error_bound,
    }


def provenance_record(out: ReductionOutput, kind: str) -> dict:
    return {
        "schema": PROVENANCE_SCHEMA,
        "kind": kind,
        "vertices": [dict(id=v + 1, **origin.as_dict()) for v, origin in enumerate(out.provenance)],
        "parts": [{"id": i + 1, "role": role} for i, role in enumerate(out.part_roles)],
    }


def dumps(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))
