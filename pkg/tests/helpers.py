"""Independent reference implementations used as test oracles.

None of these share code paths with the package's transforms or solvers.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from partcolor import make_instance

C5_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]


def triangle(k: int):
    return make_instance([[0], [1], [2]], [(0, 1), (1, 2), (0, 2)], k)


def c5_partitioned(k: int = 1):
    # C5 on 1..5 shifted to 0..4; parts {1,2}, {3,4}, {5}
    return make_instance([[0, 1], [2, 3], [4]], C5_EDGES, k)


def petersen_edges() -> list[tuple[int, int]]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


def all_digits(radices) -> np.ndarray:
    """Every code's digit vector, part 0 fastest, shape (size, p)."""
    grids = np.meshgrid(*[np.arange(r) for r in radices], indexing="ij")
    size = int(np.prod(radices))
    # meshgrid with ij puts axis 0 slowest; reverse so digit 0 is fastest
    cols = [g.transpose(*reversed(range(len(radices)))).reshape(size) for g in grids]
    return np.stack(cols, axis=1) if cols else np.zeros((1, 0), dtype=np.int64)


def naive_convolution(g: list[int], h: list[int], radices) -> list[int]:
    """Quadratic scan of (g*h)(s) = sum over t below s of g(t) h(s minus t).

    Every (t, s) pair is tested. t lies below s when each digit of t is 0 or
    equal to s's digit; then s minus t has digits s - t, so its index is
    index(s) - index(t).
    """
    digits = all_digits(radices)
    size = len(digits)
    below = np.all((digits[None, :, :] == 0) | (digits[None, :, :] == digits[:, None, :]), axis=2)
    s_idx, t_idx = np.nonzero(below)
    peak = max(map(abs, g), default=0) * max(map(abs, h), default=0) * size
    if peak < 2**62:
        out = np.zeros(size, dtype=np.int64)
        np.add.at(out, s_idx, np.asarray(g, dtype=np.int64)[t_idx] * np.asarray(h, dtype=np.int64)[s_idx - t_idx])
        return out.tolist()
    out = [0] * size
    for s, t in zip(s_idx.tolist(), t_idx.tolist()):
        out[s] += g[t] * h[s - t]
    return out


def brute_zeta(values: list[int], radices) -> list[int]:
    digits = all_digits(radices)
    out = []
    for s in range(len(digits)):
        below = np.all((digits == 0) | (digits == digits[s]), axis=1)
        out.append(sum(values[t] for t in np.flatnonzero(below)))
    return out


@lru_cache(maxsize=None)
def _coloring_grid(r: int, k: int) -> np.ndarray:
    maps = list(itertools.product(range(k), repeat=r))
    return np.array(maps, dtype=np.int8).reshape(len(maps), r)


@lru_cache(maxsize=None)
def count_ordered_partitions(r: int, local_edges: frozenset, k: int) -> int:
    """Ordered k-tuples of disjoint independent sets covering r labelled vertices.

    Such a tuple is the same thing as a map vertex -> slot in 0..k-1 whose
    fibres are independent, so every map is enumerated and checked.
    """
    grid = _coloring_grid(r, k)
    ok = np.ones(len(grid), dtype=bool)
    for a, b in local_edges:
        ok &= grid[:, a] != grid[:, b]
    return int(ok.sum())


def brute_power_counts(inst, k: int) -> list[int]:
    """f^{*k} at every code of ``inst``'s lattice, by explicit enumeration."""
    radices = [len(part) + 1 for part in inst.parts]
    out = []
    for code in all_digits(radices):
        chosen = [inst.parts[i][d - 1] for i, d in enumerate(code) if d]
        local = frozenset(
            (i, j)
            for i, j in itertools.combinations(range(len(chosen)), 2)
            if inst.adjacent(chosen[i], chosen[j])
        )
        out.append(count_ordered_partitions(len(chosen), local, k))
    return out


def exhaustive_chromatic(n: int, edges) -> int:
    """Smallest k admitting a proper coloring, found by trying every map."""
    if n == 0:
        return 0
    edges = list(edges)
    for k in range(1, n + 1):
        grid = _coloring_grid(n, k)
        ok = np.ones(len(grid), dtype=bool)
        for a, b in edges:
            ok &= grid[:, a] != grid[:, b]
        if ok.any():
            return k
    return n


def has_independent_set(n: int, edges, size: int) -> bool:
    adjacent = {(min(a, b), max(a, b)) for a, b in edges}
    for group in itertools.combinations(range(n), size):
        if all((a, b) not in adjacent for a, b in itertools.combinations(group, 2)):
            return True
    return False


def brute_pcp(inst) -> bool:
    """Try every selection and every coloring map; no pruning, no symmetry breaking."""
    k = min(inst.k, inst.p)
    for chosen in itertools.product(*inst.parts):
        local = [
            (i, j)
            for i, j in itertools.combinations(range(len(chosen)), 2)
            if inst.adjacent(chosen[i], chosen[j])
        ]
        grid = _coloring_grid(len(chosen), k)
        ok = np.ones(len(grid), dtype=bool)
        for a, b in local:
            ok &= grid[:, a] != grid[:, b]
        if ok.any():
            return True
    return False


def backtrack_colorable(n: int, edges, k: int) -> bool:
    """Plain depth-first k-coloring in vertex order, no symmetry breaking."""
    nbrs = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    colors = [-1] * n

    def place(v: int) -> bool:
        if v == n:
            return True
        used = {colors[u] for u in nbrs[v] if u < v}
        for c in range(k):
            if c not in used:
                colors[v] = c
                if place(v + 1):
                    return True
        colors[v] = -1
        return False

    return place(0)
