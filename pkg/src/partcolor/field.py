"""Arithmetic backends for lattice tables.

Two modes are supported. Modular mode works in Z/P for a prime P drawn from
a fixed pool in [2**50, 2**51) and stores residues as int64. Exact mode keeps
true integers: int64 when the caller proves no overflow is possible, Python
ints in an object array otherwise.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from partcolor.errors import FieldMismatch

# nextprime(2**50 + i * 2**44) for i in 0..47; all below 2**51.
PRIME_POOL: tuple[int, ...] = (
    1125899906842679, 1143492092887061, 1161084278931541, 1178676464975873,
    1196268651020291, 1213860837064751, 1231453023109121, 1249045209153569,
    1266637395197957, 1284229581242369, 1301821767286801, 1319413953331231,
    1337006139375617, 1354598325420091, 1372190511464519, 1389782697508873,
    1407374883553321, 1424967069597719, 1442559255642221, 1460151441686551,
    1477743627730991, 1495335813775369, 1512927999819787, 1530520185864199,
    1548112371908617, 1565704557953051, 1583296743997459, 1600888930041883,
    1618481116086277, 1636073302130689, 1653665488175111, 1671257674219607,
    1688849860263953, 1706442046308407, 1724034232352791, 1741626418397207,
    1759218604441603, 1776810790486031, 1794402976530467, 1811995162574969,
    1829587348619357, 1847179534663811, 1864771720708109, 1882363906752523,
    1899956092796929, 1917548278841347, 1935140464885787, 1952732650930177,
)

PRIME_BITS = 50
INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class FieldSpec:
    """Either a prime modulus or ``None`` for exact integer arithmetic."""

    modulus: int | None = None

    @classmethod
    def exact(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def modular(cls, modulus: int) -> FieldSpec:
        if not 2 <= modulus < 1 << 51:
            raise ValueError("modulus must lie in [2, 2**51)")
        return cls(modulus)

    @classmethod
    def random_prime(cls, rng: random.Random | None = None) -> FieldSpec:
        rng = rng or random.Random()
        return cls(rng.choice(PRIME_POOL))

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def __str__(self) -> str:
        return "exact" if self.modulus is None else f"mod {self.modulus}"

    # -- array helpers -------------------------------------------------

    def dtype(self, wide: bool = True):
        if self.modulus is None and wide:
            return object
        return np.int64

    def asarray(self, values, wide: bool = True) -> np.ndarray:
        """Bring integer data into this field's representation."""
        arr = np.asarray(values)
        if self.modulus is None:
            if wide:
                out = np.empty(arr.shape, dtype=object)
                out[...] = [int(x) for x in arr.ravel()] if arr.size else []
                return out.reshape(arr.shape)
            return arr.astype(np.int64)
        if arr.dtype == object:
            return np.array([int(x) % self.modulus for x in arr.ravel()], dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64), self.modulus)

    def zeros(self, shape, wide: bool = True) -> np.ndarray:
        if self.modulus is None and wide:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def iadd(self, x: np.ndarray, y: np.ndarray) -> None:
        """``x += y`` in place."""
        x += y
        if self.modulus is not None:
            _fold(x, self.modulus)

    def isub(self, x: np.ndarray, y: np.ndarray) -> None:
        """``x -= y`` in place."""
        x -= y
        if self.modulus is not None:
            x += (x >> 63) & self.modulus

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.modulus is None:
            return a * b
        return mulmod(a, b, self.modulus)

    def is_zero(self, x: np.ndarray) -> np.ndarray:
        return x == 0


def _fold(x: np.ndarray, modulus: int) -> None:
    # values in [0, 2P) -> [0, P)
    x -= modulus
    x += (x >> 63) & modulus


def mulmod(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    """Elementwise ``a * b mod modulus`` for int64 residues, modulus < 2**51.

    The quotient is estimated in double precision; its error is below one,
    so the int64 remainder (exact modulo 2**64) lands in [-P, 2P) and two
    branch-free corrections finish the reduction.
    """
    q = np.multiply(a, b, dtype=np.float64)
    q *= 1.0 / modulus
    r = a * b
    r -= q.astype(np.int64) * modulus
    r += (r >> 63) & modulus
    _fold(r, modulus)
    return r


def check_same_field(*fields: FieldSpec) -> FieldSpec:
    first = fields[0]
    for other in fields[1:]:
        if other != first:
            raise FieldMismatch(f"{first} vs {other}")
    return first


def exact_int64_fits(p: int, k: int) -> bool:
    """Whether exact ranked power computation of f^{*k} fits in int64.

    Degree-c coefficient of the j-th power of a ranked transform counts
    j-tuples of subsets with total size c, at most C(j*p, c); the inverse
    transform adds a factor 2**p.
    """
    worst = max(math.comb(max(k, 1) * p, c) for c in range(p + 1))
    return worst << p < INT64_SAFE


def no_error_bound(p: int, k: int, repeats: int, pool_size: int = len(PRIME_POOL)) -> float:
    """Probability that a positive count vanishes modulo every sampled prime.

    A count is at most k**p, so it has at most ceil(p*log2(k)/50) prime
    factors from the pool.
    """
    if k <= 1:
        return 0.0
    bad = math.ceil(p * math.log2(k) / PRIME_BITS)
    return min(1.0, bad / pool_size) ** repeats
