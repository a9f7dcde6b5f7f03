"""Order types of rational tuples.

A k-tuple over the dense order (Q;<) is determined up to an order-preserving
bijection of Q by the rank of each entry among the distinct entries. This
module provides that canonical form (``WeakOrder``), concrete representatives
(``GroundTuple``), enumeration of all order types of a given length and the
realization helpers used to lift orbits back to rational values.

Indices are 0-based everywhere; rank tuples serialize as plain integer lists,
e.g. ``[1, 0, 1]``.
"""

import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import config
from errors import BudgetExceeded, InconsistentAlignment, ParseError

Number = int | Fraction


def exact(value) -> Number:
    """Convert a user supplied value into an exact rational."""
    if isinstance(value, bool):
        raise ParseError(f"Boolean is not a rational value: {value!r}")
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        try:
            parsed = Fraction(value.strip())
        except ValueError as e:
            raise ParseError(f"Invalid rational value: {value!r}") from e
        return int(parsed) if parsed.denominator == 1 else parsed
    raise ParseError(f"Unsupported value type {type(value).__name__}: {value!r}")


@dataclass(frozen=True, order=True)
class WeakOrder:
    """Surjective rank tuple: the canonical orbit of a tuple under Aut(Q;<)."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if not ranks:
            raise ParseError("A weak order needs at least one position")
        if any(not isinstance(r, int) or r < 0 for r in ranks):
            raise ParseError(f"Ranks must be non-negative integers: {ranks}")
        if set(ranks) != set(range(max(ranks) + 1)):
            raise ParseError(f"Ranks are not surjective onto 0..{max(ranks)}: {ranks}")

    @classmethod
    def _trusted(cls, ranks: tuple[int, ...]) -> "WeakOrder":
        # Skips validation for ranks produced by canonicalize
        obj = object.__new__(cls)
        object.__setattr__(obj, "ranks", ranks)
        return obj

    def __len__(self) -> int:
        return len(self.ranks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ranks)

    def __getitem__(self, index):
        return self.ranks[index]

    @property
    def height(self) -> int:
        """Number of distinct values."""
        return max(self.ranks) + 1

    def restrict(self, positions: Iterable[int]) -> "WeakOrder":
        return canonicalize(self.ranks[p] for p in positions)

    def block(self, index: int, width: int) -> "WeakOrder":
        return self.restrict(range(index * width, (index + 1) * width))

    def blocks(self, n: int) -> tuple["WeakOrder", ...]:
        """Split into n equally long component orbits."""
        if len(self) % n:
            raise ParseError(f"Length {len(self)} is not divisible into {n} blocks")
        width = len(self) // n
        return tuple(self.block(i, width) for i in range(n))

    def reversed_order(self) -> "WeakOrder":
        top = max(self.ranks)
        return WeakOrder._trusted(tuple(top - r for r in self.ranks))

    def ground(self) -> "GroundTuple":
        return ground_of(self)

    def to_list(self) -> list[int]:
        return list(self.ranks)

    @classmethod
    def from_list(cls, ranks: Sequence[int]) -> "WeakOrder":
        return cls(tuple(ranks))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.ranks)) + ")"


@dataclass(frozen=True)
class GroundTuple:
    """A concrete tuple of exact rationals representing its orbit."""

    values: tuple[Number, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(exact(v) for v in self.values))

    @classmethod
    def of(cls, *values) -> "GroundTuple":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Number]:
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]

    @property
    def orbit(self) -> WeakOrder:
        return canonicalize(self.values)

    def project(self, positions: Iterable[int]) -> "GroundTuple":
        return GroundTuple(tuple(self.values[p] for p in positions))

    def components(self, n: int) -> tuple["GroundTuple", ...]:
        """Split a flat n*k tuple into its n components."""
        if len(self) % n:
            raise ParseError(f"Length {len(self)} is not divisible into {n} components")
        width = len(self) // n
        return tuple(GroundTuple(self.values[i * width:(i + 1) * width]) for i in range(n))

    def negated(self) -> "GroundTuple":
        return GroundTuple(tuple(-v for v in self.values))

    def to_list(self) -> list:
        return [v if isinstance(v, int) else str(v) for v in self.values]

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def join(components: Sequence[GroundTuple]) -> GroundTuple:
    """Concatenate components into one flat tuple."""
    values: list[Number] = []
    for component in components:
        values.extend(component.values)
    return GroundTuple(tuple(values))


def canonicalize(values) -> WeakOrder:
    """Rank tuple of any sequence of mutually comparable, hashable values.

    Works for ground tuples as well as for layered operation keys.
    """
    if isinstance(values, GroundTuple):
        values = values.values
    values = tuple(values)
    if not values:
        raise ParseError("Cannot canonicalize an empty tuple")
    rank = {v: r for r, v in enumerate(sorted(set(values)))}
    return WeakOrder._trusted(tuple(rank[v] for v in values))


def ground_of(w: WeakOrder) -> GroundTuple:
    """Deterministic representative: the ranks themselves as integers."""
    return GroundTuple(w.ranks)


def extend_ground(joint: WeakOrder, fixed: Mapping[int, Number]) -> GroundTuple:
    """Realize ``joint`` while keeping the given values at the fixed positions.

    Free ranks strictly between two fixed ranks are spread evenly between their
    values; ranks below or above every fixed rank step away by one.

    Raises:
        InconsistentAlignment: if the fixed values do not have the order type
            that ``joint`` prescribes for their positions.
    """
    rank_value: dict[int, Number] = {}
    for position, value in fixed.items():
        value = exact(value)
        rank = joint.ranks[position]
        if rank in rank_value and rank_value[rank] != value:
            raise InconsistentAlignment(
                f"Positions of rank {rank} carry different values {rank_value[rank]} and {value}")
        rank_value[rank] = value
    known = sorted(rank_value)
    for lower, upper in zip(known, known[1:]):
        if not rank_value[lower] < rank_value[upper]:
            raise InconsistentAlignment(f"Fixed values contradict the joint order {joint}")

    height = joint.height
    if not known:
        return ground_of(joint)
    values = dict(rank_value)
    first, last = known[0], known[-1]
    for r in range(first):
        values[r] = rank_value[first] - (first - r)
    for r in range(last + 1, height):
        values[r] = rank_value[last] + (r - last)
    for lower, upper in zip(known, known[1:]):
        gap = upper - lower
        if gap > 1:
            step = Fraction(rank_value[upper] - rank_value[lower], gap)
            for offset in range(1, gap):
                values[lower + offset] = rank_value[lower] + step * offset
    return GroundTuple(tuple(values[r] for r in joint.ranks))


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        yield [[first]] + partition


@lru_cache(maxsize=None)
def enumerate_weak_orders(k: int) -> tuple[WeakOrder, ...]:
    """All weak orders of length k in lexicographic order.

    Built from ordered set partitions: every set partition of the positions
    together with every ordering of its blocks.

    Raises:
        ParseError: if k < 1.
        BudgetExceeded: if k exceeds config.MAX_ENUM_ARITY.
    """
    if k < 1:
        raise ParseError(f"Weak orders need a positive length, got {k}")
    if k > config.MAX_ENUM_ARITY:
        raise BudgetExceeded(f"Enumerating weak orders of length {k} exceeds the bound {config.MAX_ENUM_ARITY}")
    found = set()
    for partition in _set_partitions(list(range(k))):
        for ordering in permutations(partition):
            ranks = [0] * k
            for rank, block in enumerate(ordering):
                for position in block:
                    ranks[position] = rank
            found.add(tuple(ranks))
    return tuple(WeakOrder._trusted(r) for r in sorted(found))


@lru_cache(maxsize=None)
def count_weak_orders(k: int) -> int:
    """Ordered Bell (Fubini) number via the ordered-set-partition recurrence."""
    if k == 0:
        return 1
    return sum(comb(k, i) * count_weak_orders(k - i) for i in range(1, k + 1))


def constant_orbit(length: int) -> WeakOrder:
    return WeakOrder._trusted((0,) * length)
