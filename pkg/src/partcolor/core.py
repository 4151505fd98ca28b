"""Problem data model, certificate checking and the brute-force oracle."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from partcolor.errors import (
    BadBudget,
    BadId,
    CapExceeded,
    DuplicateEdge,
    EmptyPart,
    InvalidInstance,
    SelfLoop,
    VertexInNoParts,
    VertexInTwoParts,
)

ORACLE_CAP = 1 << 20


@dataclass(frozen=True)
class PcpInstance:
    """A graph, an ordered vertex partition and a color budget.

    Vertex ids are dense ``0..n-1``. Each part keeps its vertices in input
    order; that order fixes the lattice digit encoding. Build instances with
    :func:`validate_instance` or :func:`make_instance`; the constructor does
    not re-check invariants.
    """

    n: int
    parts: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]]
    k: int

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def p(self) -> int:
        return len(self.parts)

    @property
    def q(self) -> int:
        return max(len(part) for part in self.parts)

    @property
    def effective_k(self) -> int:
        # a selection has exactly p vertices, so p colors always suffice
        return min(self.k, self.p)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood of every vertex as an integer bitmask."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def part_of(self) -> tuple[int, ...]:
        owner = [0] * self.n
        for i, part in enumerate(self.parts):
            for v in part:
                owner[v] = i
        return tuple(owner)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def with_budget(self, k: int) -> PcpInstance:
        if k < 1:
            raise BadBudget(k)
        return PcpInstance(self.n, self.parts, self.edges, k)


@dataclass(frozen=True)
class Selection:
    """One chosen vertex per part, stored as indices into each part."""

    chosen: tuple[int, ...]

    def vertices(self, inst: PcpInstance) -> tuple[int, ...]:
        return tuple(part[j] for part, j in zip(inst.parts, self.chosen))


@dataclass(frozen=True)
class Coloring:
    """Colors ``1..k`` for the chosen vertices."""

    assignment: Mapping[int, int]


@dataclass(frozen=True)
class Solution:
    verdict: bool
    solver_tag: str
    selection: Selection | None = None
    coloring: Coloring | None = None
    error_bound: float | None = None
    primes: tuple[int, ...] = ()
    lattice_size: int | None = None
    extra: Mapping[str, object] = field(default_factory=dict)

    @property
    def certificate(self) -> tuple[Selection, Coloring] | None:
        if self.selection is None or self.coloring is None:
            return None
        return self.selection, self.coloring


def validate_instance(raw: Mapping) -> PcpInstance:
    """Check parsed instance data and return an immutable :class:`PcpInstance`.

    ``raw`` holds ``n``, ``parts`` (lists of vertex ids), ``edges`` (pairs)
    and ``k``. Errors name the first offending entity, checking parts before
    coverage before edges.
    """
    n = raw["n"]
    k = raw["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise BadBudget(k)
    if not isinstance(n, int) or n < 1:
        raise InvalidInstance(n, f"vertex count must be positive, got {n!r}")

    seen: set[int] = set()
    parts = []
    for i, part in enumerate(raw["parts"]):
        part = list(part)
        if not part:
            raise EmptyPart(i)
        for v in part:
            if not isinstance(v, int) or not 0 <= v < n:
                raise BadId(v)
            if v in seen:
                raise VertexInTwoParts(v)
            seen.add(v)
        parts.append(tuple(part))
    for v in range(n):
        if v not in seen:
            raise VertexInNoParts(v)

    edges: set[tuple[int, int]] = set()
    for u, v in raw["edges"]:
        for x in (u, v):
            if not isinstance(x, int) or not 0 <= x < n:
                raise BadId(x)
        if u == v:
            raise SelfLoop(u)
        pair = (u, v) if u < v else (v, u)
        if pair in edges:
            raise DuplicateEdge((u, v))
        edges.add(pair)

    return PcpInstance(n=n, parts=tuple(parts), edges=frozenset(edges), k=k)


def make_instance(
    parts: Sequence[Sequence[int]],
    edges: Iterable[tuple[int, int]],
    k: int,
    n: int | None = None,
) -> PcpInstance:
    if n is None:
        n = sum(len(part) for part in parts)
    return validate_instance({"n": n, "parts": parts, "edges": list(edges), "k": k})


def selection_count(inst: PcpInstance) -> int:
    return math.prod(len(part) for part in inst.parts)


def induced_selection_graph(inst: PcpInstance, sel: Selection) -> dict[int, frozenset[int]]:
    """Adjacency among the chosen vertices only, keyed in part order."""
    chosen = sel.vertices(inst)
    members = set(chosen)
    return {v: frozenset(u for u in members if inst.adjacent(u, v)) for v in chosen}


def verify_certificate(inst: PcpInstance, sel: Selection, col: Coloring) -> bool:
    chosen = sel.chosen
    if len(chosen) != inst.p:
        return False
    for part, j in zip(inst.parts, chosen):
        if not isinstance(j, int) or not 0 <= j < len(part):
            return False
    vertices = sel.vertices(inst)
    assignment = col.assignment
    if set(assignment) != set(vertices):
        return False
    for v in vertices:
        c = assignment[v]
        if not isinstance(c, int) or not 1 <= c <= inst.k:
            return False
    members = set(vertices)
    for u, v in inst.edges:
        if u in members and v in members and assignment[u] == assignment[v]:
            return False
    return True


def color_vertices(vertices: Sequence[int], adjacency: Sequence[int], k: int) -> dict[int, int] | None:
    """Backtracking k-coloring of the graph induced on ``vertices``.

    Vertex i may only take colors up to one more than the largest color used
    by vertices 0..i-1, which removes color-permutation symmetry.
    Returns a map to colors ``1..k`` or ``None``.
    """
    count = len(vertices)
    if count == 0:
        return {}
    if k < 1:
        return None
    index = {v: i for i, v in enumerate(vertices)}
    # earlier neighbours of each position
    earlier = []
    for i, v in enumerate(vertices):
        mask = adjacency[v]
        earlier.append([index[u] for u in vertices[:i] if mask >> u & 1])
    colors = [0] * count

    def place(i: int, top: int) -> bool:
        if i == count:
            return True
        blocked = {colors[j] for j in earlier[i]}
        for c in range(1, min(top + 1, k) + 1):
            if c in blocked:
                continue
            colors[i] = c
            if place(i + 1, max(top, c)):
                return True
        colors[i] = 0
        return False

    if not place(0, 0):
        return None
    return {v: colors[i] for i, v in enumerate(vertices)}


def _is_independent(vertices: Sequence[int], adjacency: Sequence[int]) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(not adjacency[v] & mask for v in vertices)


def _is_bipartite(vertices: Sequence[int], adjacency: Sequence[int]) -> bool:
    members = 0
    for v in vertices:
        members |= 1 << v
    unseen = members
    while unseen:
        low = unseen & -unseen
        unseen ^= low
        side = [low, 0]
        frontier, parity = low, 0
        while frontier:
            grow = 0
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                grow |= adjacency[bit.bit_length() - 1]
            grow &= members
            if grow & side[parity]:
                return False
            parity ^= 1
            frontier = grow & unseen
            unseen &= ~grow
            side[parity] |= grow
            if side[0] & side[1]:
                return False
    return True


def is_colorable(vertices: Sequence[int], adjacency: Sequence[int], k: int) -> bool:
    if k >= len(vertices):
        return True
    if k == 1:
        return _is_independent(vertices, adjacency)
    if k == 2:
        return _is_bipartite(vertices, adjacency)
    return color_vertices(vertices, adjacency, k) is not None


def iter_selections(inst: PcpInstance) -> Iterable[tuple[int, ...]]:
    """All selections in mixed-radix order; part 0's index changes fastest."""
    for rev in itertools.product(*(range(len(part)) for part in reversed(inst.parts))):
        yield rev[::-1]


def oracle_solve(inst: PcpInstance, cap: int = ORACLE_CAP) -> Solution:
    """Exhaustive search over every selection.

    Returns the first k-colorable selection in mixed-radix order together
    with a coloring, or a definite ``no``.
    """
    total = selection_count(inst)
    if total > cap:
        raise CapExceeded(f"{total} selections exceed the oracle cap {cap}")
    k = inst.effective_k
    adjacency = inst.adjacency
    parts = inst.parts
    for chosen in iter_selections(inst):
        vertices = [part[j] for part, j in zip(parts, chosen)]
        if is_colorable(vertices, adjacency, k):
            coloring = color_vertices(vertices, adjacency, k)
            return Solution(
                verdict=True,
                solver_tag="oracle",
                selection=Selection(chosen),
                coloring=Coloring(coloring),
                error_bound=0.0,
            )
    return Solution(verdict=False, solver_tag="oracle", error_bound=0.0)


def chromatic_number(vertices: Sequence[int], adjacency: Sequence[int]) -> int:
    """Smallest k with a proper k-coloring; 0 for no vertices."""
    k = 0
    while color_vertices(vertices, adjacency, k) is None:
        k += 1
    return k
