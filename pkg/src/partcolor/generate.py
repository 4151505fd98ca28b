"""Seeded random instance generation.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded with
the given seed, consumed in a fixed order: part sizes, then the vertex label
shuffle, then one draw per vertex pair ``(u, v)``, ``u < v``, in
lexicographic order. The same parameters and seed always give the same
instance.
"""

from __future__ import annotations

import random

from partcolor.core import PcpInstance, make_instance
from partcolor.errors import InfeasibleShape


def part_sizes(n: int, p: int, q: int, rng: random.Random) -> list[int]:
    """Random composition of n into p sizes within [1, q].

    Starting from all ones, each remaining vertex goes to a uniformly chosen
    part that is not yet full.
    """
    if p < 1 or q < 1 or not p <= n <= p * q:
        raise InfeasibleShape(f"cannot split {n} vertices into {p} parts of size 1..{q}")
    sizes = [1] * p
    open_parts = [i for i in range(p) if q > 1]
    for _ in range(n - p):
        i = rng.choice(open_parts)
        sizes[i] += 1
        if sizes[i] == q:
            open_parts.remove(i)
    return sizes


def random_instance(n: int, p: int, q: int, edge_prob: float, k: int, seed=None) -> PcpInstance:
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge probability {edge_prob} outside [0, 1]")
    rng = random.Random(seed)
    sizes = part_sizes(n, p, q, rng)
    labels = list(range(n))
    rng.shuffle(labels)
    parts = []
    start = 0
    for size in sizes:
        parts.append(labels[start:start + size])
        start += size
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob]
    return make_instance(parts, edges, k, n=n)


def random_shape_instance(
    rng: random.Random,
    max_p: int = 8,
    max_q: int = 3,
    max_n: int = 16,
    probs=(0.1, 0.3, 0.6),
    max_size: int | None = None,
    k: int | None = None,
) -> PcpInstance:
    """Draw (n, p, q, edge_prob, k) at random, then an instance with those parameters.

    ``max_size`` bounds the lattice size prod(|V_i| + 1) by redrawing.
    """
    while True:
        p = rng.randint(1, max_p)
        q = rng.randint(1, max_q)
        n = rng.randint(p, min(p * q, max_n)) if p <= max_n else None
        if n is None:
            continue
        inst = random_instance(n, p, q, rng.choice(probs), k or rng.randint(1, p), rng.getrandbits(32))
        if max_size is None or _lattice_size(inst) <= max_size:
            return inst


def _lattice_size(inst: PcpInstance) -> int:
    size = 1
    for part in inst.parts:
        size *= len(part) + 1
    return size
