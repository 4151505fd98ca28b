"""Exact PCP decision by convolution powers of the independence indicator.

f(S) is 1 when the semi-selection S induces no edge (f of the empty set is
1 too, so color classes may be empty). The k-th subset-convolution power
f^{*k}(S) counts ordered k-tuples of disjoint independent semi-selections
covering S, hence it is positive exactly when G[S] is k-colorable. The
instance is a yes-instance iff some full-rank code has a positive count.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from partcolor.core import Coloring, PcpInstance, Selection, Solution, color_vertices
from partcolor.errors import CertificateExtractionFailed, MemoryBudgetExceeded
from partcolor.field import PRIME_POOL, FieldSpec, exact_int64_fits, no_error_bound
from partcolor.lattice import (
    LatticeShape,
    RankLayout,
    SemiSelectionTable,
    ranked_mobius,
    ranked_product,
    ranked_zeta,
)

MEMORY_BUDGET = 4 << 30


@dataclass
class ConvolutionLayer:
    """f^{*power}; ``convolutions`` counts the products spent computing it."""

    power: int
    table: SemiSelectionTable
    convolutions: int = 0


def estimated_bytes(shape: LatticeShape) -> int:
    # three (p + 1) x size int64 arrays live at the peak of a power step
    return 3 * (shape.p + 1) * shape.size * 8


def build_indicator(
    inst: PcpInstance, field: FieldSpec | None = None, memory_budget: int = MEMORY_BUDGET
) -> SemiSelectionTable:
    """Independence indicator over every semi-selection of ``inst``.

    Parts are appended one at a time: a code that picks vertex v in the new
    part is independent iff its prefix is independent and v has no neighbour
    among the prefix's chosen vertices.
    """
    field = field or FieldSpec.exact()
    shape = LatticeShape.from_instance(inst)
    if estimated_bytes(shape) > memory_budget:
        raise MemoryBudgetExceeded(
            f"lattice of {shape.size} codes needs ~{estimated_bytes(shape)} bytes, budget {memory_budget}"
        )
    parts = inst.parts
    f = np.ones((), dtype=bool)
    for i, part in enumerate(parts):
        # f has one axis per earlier part, part a on axis i - 1 - a
        layers = [f]
        for v in part:
            conflict = np.zeros(f.shape, dtype=bool)
            for a in range(i):
                look = np.fromiter(
                    (inst.adjacent(v, u) for u in parts[a]), dtype=bool, count=len(parts[a])
                )
                if not look.any():
                    continue
                bcast = [1] * i
                bcast[i - 1 - a] = len(parts[a]) + 1
                conflict |= np.concatenate(([False], look)).reshape(bcast)
            layers.append(f & ~conflict)
        f = np.stack(layers, axis=0)
    values = f.reshape(-1).astype(np.int64)
    return SemiSelectionTable(shape, field.asarray(values, wide=False), field)


def _is_indicator(values: np.ndarray) -> bool:
    return bool(np.all((values == 0) | (values == 1)))


def power_convolve(
    f: SemiSelectionTable,
    k: int,
    field: FieldSpec | None = None,
    degrees: Iterable[int] | None = None,
) -> ConvolutionLayer:
    """f^{*k} by doubling: square for even k, square then multiply by f for odd.

    The whole recurrence runs on ranked zeta transforms, so f is transformed
    once and inverted once; each recurrence step is one truncated pointwise
    product. ``degrees`` restricts which ranks of the result are
    materialised (others stay 0); the last product then skips the rest.
    """
    if k < 1:
        raise ValueError("k must be positive")
    field = field or f.field
    if field != f.field:
        f = SemiSelectionTable(f.shape, field.asarray(f.values, wide=f.values.dtype == object), field)
    if k == 1:
        return ConvolutionLayer(1, f, 0)
    shape = f.shape
    values = f.values
    indicator = values.dtype != object and _is_indicator(values)
    if field.is_exact:
        values = field.asarray(values, wide=not (indicator and exact_int64_fits(shape.p, k)))
    keep = None if degrees is None else tuple(degrees)
    if indicator and not field.is_exact and shape.p < 50:
        # transform entries are subset counts below 2**p < modulus: skip reductions
        base = ranked_zeta(values.astype(np.int64), shape, FieldSpec.exact())
    else:
        base = ranked_zeta(values, shape, field)
    order, starts = shape.rank_order
    base = base[:, order]
    base_support = RankLayout.base_support(shape.p)
    count = 0

    def power(j: int, last: bool) -> tuple[np.ndarray, tuple[int, ...]]:
        nonlocal count
        if j == 1:
            return base, base_support
        half, support = power(j // 2, False)
        rows = keep if last and j % 2 == 0 else None
        count += 1
        square = ranked_product(half, half, field, rows, RankLayout(starts, support, support))
        square_support = RankLayout.product_support(support, support)
        if j % 2 == 0:
            return square, square_support
        count += 1
        layout = RankLayout(starts, square_support, base_support)
        out = ranked_product(square, base, field, keep if last else None, layout)
        return out, RankLayout.product_support(square_support, base_support)

    result, _ = power(k, True)
    unsorted = np.empty_like(result)
    unsorted[:, order] = result
    out = ranked_mobius(unsorted, shape, field, keep)
    return ConvolutionLayer(k, SemiSelectionTable(shape, out, field), count)


def extract_certificate(inst: PcpInstance, sel: Selection, k: int | None = None) -> Coloring:
    """Re-color the p chosen vertices directly by backtracking."""
    k = inst.effective_k if k is None else k
    coloring = color_vertices(sel.vertices(inst), inst.adjacency, k)
    if coloring is None:
        raise CertificateExtractionFailed(f"selection {sel.chosen} is not {k}-colorable")
    return Coloring(coloring)


def _pick_fields(field: FieldSpec | None, repeats: int, seed) -> list[FieldSpec]:
    if field is not None and field.is_exact:
        return [field]
    rng = random.Random(seed)
    pool = list(PRIME_POOL)
    chosen = []
    if field is not None:
        chosen.append(field.modulus)
        pool = [q for q in pool if q != field.modulus]
    chosen += rng.sample(pool, max(0, repeats - len(chosen)))
    return [FieldSpec.modular(q) for q in chosen]


def solve_exact(
    inst: PcpInstance,
    field: FieldSpec | None = None,
    repeats: int = 2,
    seed=None,
    memory_budget: int = MEMORY_BUDGET,
) -> Solution:
    """Decide ``inst`` from f^{*k} at full-rank codes.

    ``field=None`` samples ``repeats`` distinct primes from the pool (``seed``
    makes the draw reproducible); ``FieldSpec.exact()`` is deterministic.
    A nonzero residue proves a positive count, so only ``no`` answers of the
    modular mode can be wrong, with probability at most ``error_bound``.
    """
    if repeats < 1:
        raise ValueError("repeats must be positive")
    k = inst.effective_k
    p = inst.p
    indicator = build_indicator(inst, FieldSpec.exact(), memory_budget)
    shape = indicator.shape
    full = shape.full_rank_codes
    fields = _pick_fields(field, repeats, seed)
    primes: list[int] = []
    convolutions = 0
    for fs in fields:
        if fs.modulus is not None:
            primes.append(fs.modulus)
        layer = power_convolve(indicator, k, fs, degrees=(p,))
        convolutions = layer.convolutions
        hits = np.flatnonzero(layer.table.values[full] != 0)
        if hits.size:
            digits = shape.decode(int(full[hits[0]]))
            sel = Selection(tuple(d - 1 for d in digits))
            return Solution(
                verdict=True,
                solver_tag="exact",
                selection=sel,
                coloring=extract_certificate(inst, sel, k),
                error_bound=0.0,
                primes=tuple(primes),
                lattice_size=shape.size,
                extra={"arithmetic": "exact" if fs.is_exact else "modular", "convolutions": convolutions},
            )
    exact = fields[0].is_exact
    return Solution(
        verdict=False,
        solver_tag="exact",
        error_bound=0.0 if exact else no_error_bound(p, k, len(primes)),
        primes=tuple(primes),
        lattice_size=shape.size,
        extra={"arithmetic": "exact" if exact else "modular", "convolutions": convolutions},
    )
