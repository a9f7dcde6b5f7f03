"""Minimum statistics of tuples and of tuples of tuples.

For a tuple t: ``min(t)``, the argmin set ``minx(t)``, the blocks ``I_m(t)``
of indices holding one of the m smallest distinct values, and the kernel
``ker(t)`` of index pairs with equal entries. For an n-tuple of k-tuples:
the set ``M`` of components attaining the global minimum and min-cleanness.

All functions accept ground tuples or any sequence of mutually comparable
values (layered operation keys included).
"""

import os
import sys
from dataclasses import dataclass
from typing import Iterable, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from orbits.weak_order import canonicalize


def _values(t) -> tuple:
    return tuple(t)


@dataclass(frozen=True)
class TupleStats:
    min_value: object
    minx: frozenset[int]
    kernel: frozenset[tuple[int, int]]
    blocks: tuple[frozenset[int], ...]

    def I(self, m: int) -> frozenset[int]:
        """Indices among the m smallest distinct values; all indices for m >= k."""
        if m <= 0:
            return frozenset()
        return self.blocks[min(m, len(self.blocks)) - 1]

    @property
    def off_diagonal(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, j in self.kernel if i != j)


def stats(t) -> TupleStats:
    values = _values(t)
    distinct = sorted(set(values))
    blocks = []
    for m in range(1, len(values) + 1):
        bound = distinct[min(m, len(distinct)) - 1]
        blocks.append(frozenset(i for i, v in enumerate(values) if v <= bound))
    kernel = frozenset((i, j) for i, a in enumerate(values) for j, b in enumerate(values) if a == b)
    return TupleStats(min_value=distinct[0], minx=blocks[0], kernel=kernel, blocks=tuple(blocks))


def min_value(t):
    return min(_values(t))


def minx(t) -> frozenset[int]:
    values = _values(t)
    low = min(values)
    return frozenset(i for i, v in enumerate(values) if v == low)


def kernel_pairs(t) -> frozenset[tuple[int, int]]:
    """Off-diagonal kernel as unordered pairs i < j."""
    values = _values(t)
    return frozenset(
        (i, j) for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] == values[j])


def sim_I(a, b, I: Iterable[int]) -> bool:
    """True iff the projections of a and b to I are order-isomorphic."""
    I = sorted(I)
    if not I:
        return True
    va, vb = _values(a), _values(b)
    return canonicalize(va[i] for i in I) == canonicalize(vb[i] for i in I)


def M_set(components: Sequence) -> frozenset[int]:
    """Indices of components attaining the global minimum."""
    lows = [min_value(c) for c in components]
    low = min(lows)
    return frozenset(i for i, v in enumerate(lows) if v == low)


def is_min_clean(components: Sequence) -> bool:
    M = sorted(M_set(components))
    first = minx(components[M[0]])
    return all(minx(components[i]) == first for i in M[1:])


def split(t, n: int) -> tuple[tuple, ...]:
    """Split a flat sequence of n*k values into n component tuples."""
    values = _values(t)
    width = len(values) // n
    return tuple(values[i * width:(i + 1) * width] for i in range(n))


def is_pseudo_loop(t, n: int) -> bool:
    """All n components of a flat tuple lie in one orbit."""
    parts = [canonicalize(p) for p in split(t, n)]
    return all(p == parts[0] for p in parts[1:])


def is_loop(t, n: int) -> bool:
    parts = split(t, n)
    return all(p == parts[0] for p in parts[1:])
