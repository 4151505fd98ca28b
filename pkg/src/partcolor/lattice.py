"""Dense mixed-radix tables over the lattice of semi-selections.

A semi-selection picks at most one vertex per part. Coordinate ``i`` of a
code holds 0 when part ``i`` is unselected and ``j >= 1`` when the ``j``-th
vertex of that part is chosen, so part ``i`` contributes radix
``|V_i| + 1``. Codes are stored at ``sum(digit_i * weight_i)`` with
``weight_0 = 1``. Below any fixed code the order is a Boolean lattice over
its nonzero coordinates, which is what makes ranked subset convolution work.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from partcolor.errors import DigitOutOfRange, ShapeMismatch
from partcolor.field import INT64_SAFE, FieldSpec, check_same_field


@dataclass(frozen=True)
class LatticeShape:
    radices: tuple[int, ...]

    @classmethod
    def from_parts(cls, parts: Iterable[Sequence[int]]) -> LatticeShape:
        return cls(tuple(len(part) + 1 for part in parts))

    @classmethod
    def from_instance(cls, inst) -> LatticeShape:
        return cls.from_parts(inst.parts)

    @property
    def p(self) -> int:
        return len(self.radices)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        out = [1]
        for radix in self.radices[:-1]:
            out.append(out[-1] * radix)
        return tuple(out)

    @cached_property
    def size(self) -> int:
        return math.prod(self.radices)

    @cached_property
    def ranks(self) -> np.ndarray:
        """Number of selected parts for every code, indexed like a table."""
        rank = np.zeros(self.size, dtype=np.int16)
        for i, radix in enumerate(self.radices):
            view = rank.reshape(self._split(i))
            view[:, 1:, :] += 1
        return rank

    @cached_property
    def rank_order(self) -> tuple[np.ndarray, np.ndarray]:
        """Permutation sorting codes by rank, and where each rank begins."""
        order = np.argsort(self.ranks, kind="stable")
        starts = np.searchsorted(self.ranks[order], np.arange(self.p + 2))
        return order, starts

    @cached_property
    def full_rank_codes(self) -> np.ndarray:
        return np.flatnonzero(self.ranks == self.p)

    def _split(self, i: int) -> tuple[int, int, int]:
        post = self.weights[i]
        radix = self.radices[i]
        return self.size // (post * radix), radix, post

    def axis_view(self, values: np.ndarray, i: int) -> np.ndarray:
        """View of ``values`` (last axis = codes) as (..., pre, radix_i, post)."""
        return values.reshape(values.shape[:-1] + self._split(i))

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != self.p:
            raise DigitOutOfRange(f"expected {self.p} digits, got {len(digits)}")
        index = 0
        for d, radix, w in zip(digits, self.radices, self.weights):
            if not 0 <= d < radix:
                raise DigitOutOfRange(f"digit {d} outside 0..{radix - 1}")
            index += d * w
        return index

    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise DigitOutOfRange(f"index {index} outside 0..{self.size - 1}")
        digits = []
        for radix in self.radices:
            index, d = divmod(index, radix)
            digits.append(d)
        return tuple(digits)


def rank(code: Sequence[int]) -> int:
    return sum(1 for d in code if d)


def subset_relation(t: Sequence[int], s: Sequence[int]) -> bool:
    """Whether semi-selection ``t`` is contained in ``s``."""
    if len(t) != len(s):
        raise ShapeMismatch(f"{len(t)} vs {len(s)} coordinates")
    return all(a == 0 or a == b for a, b in zip(t, s))


def complement(t: Sequence[int], s: Sequence[int]) -> tuple[int, ...]:
    """``s`` minus ``t`` for ``t`` contained in ``s``."""
    return tuple(b if a == 0 else 0 for a, b in zip(t, s))


def semi_selection_bound(n: int, p: int) -> float:
    """Arithmetic-geometric mean bound on the lattice size."""
    return ((n + p) / p) ** p


@dataclass
class SemiSelectionTable:
    """Field values over every code of ``shape``."""

    shape: LatticeShape
    values: np.ndarray
    field: FieldSpec

    def __post_init__(self):
        if self.values.shape != (self.shape.size,):
            raise ShapeMismatch(f"values of shape {self.values.shape} for lattice size {self.shape.size}")

    @classmethod
    def from_values(cls, shape: LatticeShape, values, field: FieldSpec, wide: bool = True) -> SemiSelectionTable:
        return cls(shape, np.ascontiguousarray(field.asarray(values, wide=wide)), field)

    @classmethod
    def delta(cls, shape: LatticeShape, field: FieldSpec) -> SemiSelectionTable:
        """The convolution identity: 1 at the empty code, 0 elsewhere."""
        values = field.zeros(shape.size)
        values[0] = 1
        return cls(shape, values, field)

    def __getitem__(self, digits: Sequence[int]):
        return self.values[self.shape.encode(digits)]

    def copy(self) -> SemiSelectionTable:
        return SemiSelectionTable(self.shape, self.values.copy(), self.field)

    def to_ints(self) -> list[int]:
        return [int(x) for x in self.values]


def _transform(values: np.ndarray, shape: LatticeShape, field: FieldSpec, inverse: bool) -> None:
    # one pass per coordinate: every code with digit_i = j >= 1 absorbs the
    # code with digit_i = 0
    for i, radix in enumerate(shape.radices):
        if radix == 1:
            continue
        view = shape.axis_view(values, i)
        if inverse:
            field.isub(view[..., 1:, :], view[..., :1, :])
        else:
            field.iadd(view[..., 1:, :], view[..., :1, :])


def zeta_in_place(table: SemiSelectionTable) -> SemiSelectionTable:
    """values[s] <- sum of values[t] over all t contained in s."""
    _transform(table.values, table.shape, table.field, inverse=False)
    return table


def mobius_in_place(table: SemiSelectionTable) -> SemiSelectionTable:
    """Exact inverse of :func:`zeta_in_place`."""
    _transform(table.values, table.shape, table.field, inverse=True)
    return table


# -- ranked transforms ---------------------------------------------------


def ranked_zeta(values: np.ndarray, shape: LatticeShape, field: FieldSpec) -> np.ndarray:
    """Split ``values`` by rank and zeta-transform each slice.

    Returns a ``(p + 1, size)`` array whose row ``r`` at code ``s`` sums the
    input over rank-``r`` codes contained in ``s``.
    """
    out = field.zeros((shape.p + 1, shape.size), wide=values.dtype == object)
    out[shape.ranks, np.arange(shape.size)] = values
    _transform(out, shape, field, inverse=False)
    return out


def ranked_coefficient(
    a: np.ndarray,
    b: np.ndarray,
    degree: int,
    field: FieldSpec,
    out: np.ndarray | None = None,
    layout: RankLayout | None = None,
) -> np.ndarray:
    """Pointwise ``sum_{i + j = degree} a[i] * b[j]`` over the rank axis.

    With a :class:`RankLayout` the columns are sorted by code rank and each
    product only touches columns where both factor rows can be nonzero.
    """
    same = a is b
    if out is None:
        out = field.zeros(a.shape[1], wide=a.dtype == object)
    else:
        out[...] = 0
    modulus = field.modulus
    lo = max(0, degree - (b.shape[0] - 1))
    hi = min(degree, a.shape[0] - 1)

    def cols(i: int, j: int) -> slice:
        if layout is None:
            return slice(None)
        return slice(layout.starts[max(layout.support_a[i], layout.support_b[j])], None)

    if same:
        # a[i] a[d-i] pairs appear twice off the diagonal
        half = out.copy()
        for i in range(lo, hi + 1):
            j = degree - i
            c = cols(i, j)
            if i < j:
                half[c] += field.mul(a[i, c], a[j, c])
            elif i == j:
                out[c] += field.mul(a[i, c], a[i, c])
        half += half
        out += half
    else:
        for i in range(lo, hi + 1):
            j = degree - i
            c = cols(i, j)
            out[c] += field.mul(a[i, c], b[j, c])
    if modulus is not None:
        np.remainder(out, modulus, out=out)
    return out


@dataclass(frozen=True)
class RankLayout:
    """Rank-sorted column layout plus the lowest rank where each row may be nonzero.

    ``starts[r]`` is the first sorted column of rank >= r. Row r of a ranked
    zeta transform vanishes below rank r; row c of a product is bounded by
    the best split of c between its factors.
    """

    starts: Sequence[int]
    support_a: Sequence[int]
    support_b: Sequence[int]

    @staticmethod
    def base_support(p: int) -> tuple[int, ...]:
        return tuple(range(p + 1))

    @staticmethod
    def product_support(sa: Sequence[int], sb: Sequence[int]) -> tuple[int, ...]:
        top = len(sa) - 1
        return tuple(
            min(max(sa[i], sb[c - i]) for i in range(max(0, c - top), min(c, top) + 1))
            for c in range(top + 1)
        )


def ranked_product(
    a: np.ndarray,
    b: np.ndarray,
    field: FieldSpec,
    degrees: Iterable[int] | None = None,
    layout: RankLayout | None = None,
) -> np.ndarray:
    """Truncated polynomial product of two ranked transforms.

    Rows outside ``degrees`` are left zero.
    """
    top = a.shape[0] - 1
    out = field.zeros(a.shape, wide=a.dtype == object)
    for degree in range(top + 1) if degrees is None else degrees:
        ranked_coefficient(a, b, degree, field, out=out[degree], layout=layout)
    return out


def ranked_mobius(
    h: np.ndarray, shape: LatticeShape, field: FieldSpec, degrees: Iterable[int] | None = None
) -> np.ndarray:
    """Invert each requested row of ``h`` and keep it on codes of that rank.

    ``h`` is consumed. Entries at codes whose rank is not requested are 0.
    """
    out = field.zeros(shape.size, wide=h.dtype == object)
    ranks = shape.ranks
    for degree in range(shape.p + 1) if degrees is None else degrees:
        row = h[degree]
        _transform(row, shape, field, inverse=True)
        mask = ranks == degree
        out[mask] = row[mask]
    return out


def _exact_needs_wide(shape: LatticeShape, *tables: SemiSelectionTable) -> bool:
    if any(t.values.dtype == object for t in tables):
        return True
    bound = shape.p + 1
    for t in tables:
        peak = int(np.abs(t.values).max(initial=0))
        bound *= max(peak, 1) << shape.p
    return bound << shape.p >= INT64_SAFE


def subset_convolve(g: SemiSelectionTable, h: SemiSelectionTable, field: FieldSpec | None = None) -> SemiSelectionTable:
    """``(g*h)(s) = sum over t contained in s of g(t) * h(s minus t)``.

    Uses the ranked method: rank-split zeta transforms, truncated pointwise
    polynomial products, one inverse transform per rank. Rank additivity
    guarantees that only disjoint pairs survive at codes of matching rank.
    """
    if g.shape != h.shape:
        raise ShapeMismatch(f"{g.shape.radices} vs {h.shape.radices}")
    field = check_same_field(g.field, h.field, *(() if field is None else (field,)))
    shape = g.shape
    gv, hv = g.values, h.values
    if field.is_exact and _exact_needs_wide(shape, g, h):
        gv, hv = field.asarray(gv), field.asarray(hv)
    a = ranked_zeta(gv, shape, field)
    b = a if g is h else ranked_zeta(hv, shape, field)
    wide = a.dtype == object
    out = field.zeros(shape.size, wide=wide)
    row = field.zeros(shape.size, wide=wide)
    ranks = shape.ranks
    # stream one output rank at a time
    for degree in range(shape.p + 1):
        ranked_coefficient(a, b, degree, field, out=row)
        _transform(row, shape, field, inverse=True)
        mask = ranks == degree
        out[mask] = row[mask]
    return SemiSelectionTable(shape, out, field)
