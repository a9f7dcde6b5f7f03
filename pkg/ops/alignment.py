"""Alignments: how two orbits (and optionally a threshold) sit relative to each other.

Applying a binary operation to members of two orbits can give several output
orbits, depending on how the entries of the two arguments interleave. An
``Alignment`` fixes that interleaving as one weak order over the positions of
both arguments, with an optional last slot for the ll/pp threshold. The image
orbit of an operation is a function of the alignment alone.
"""

import os
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import config
from errors import BudgetExceeded, InconsistentAlignment, ParseError
from ops.temporal_ops import Kind, OpKind, apply
from orbits.weak_order import WeakOrder, canonicalize


@dataclass(frozen=True, order=True)
class Alignment:
    """Joint weak order of ``left + right (+ threshold)``; ``width`` is the left length."""

    joint: WeakOrder
    width: int
    constant: bool = False

    def __post_init__(self):
        extra = 1 if self.constant else 0
        if not 0 < self.width < len(self.joint) - extra:
            raise ParseError(f"Alignment width {self.width} does not fit joint order {self.joint}")

    @property
    def right_width(self) -> int:
        return len(self.joint) - self.width - (1 if self.constant else 0)

    @property
    def left(self) -> WeakOrder:
        return self.joint.restrict(range(self.width))

    @property
    def right(self) -> WeakOrder:
        return self.joint.restrict(range(self.width, self.width + self.right_width))

    @property
    def threshold_rank(self) -> int | None:
        return self.joint.ranks[-1] if self.constant else None

    def realize(self) -> tuple[tuple[int, ...], tuple[int, ...], int | None]:
        """Integer representatives of both arguments and the threshold."""
        ranks = self.joint.ranks
        a = ranks[:self.width]
        b = ranks[self.width:self.width + self.right_width]
        return a, b, self.threshold_rank

    def matches(self, o1: WeakOrder, o2: WeakOrder) -> bool:
        return self.left == o1 and self.right == o2

    def swap(self) -> "Alignment":
        """The same interleaving with the arguments exchanged."""
        a, b, q = self.realize()
        return alignment_of(b, a, q)

    def to_dict(self) -> dict:
        return {"joint": self.joint.to_list(), "width": self.width, "constant": self.constant}

    @classmethod
    def from_dict(cls, data: dict) -> "Alignment":
        return cls(WeakOrder.from_list(data["joint"]), int(data["width"]), bool(data.get("constant", False)))


def alignment_of(left: Sequence, right: Sequence, q=None) -> Alignment:
    """Alignment realized by concrete (mutually comparable) values."""
    values = tuple(left) + tuple(right) + ((q,) if q is not None else ())
    return Alignment(canonicalize(values), len(left), q is not None)


def _merges(h1: int, h2: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All interleavings of two chains of levels (Delannoy paths).

    Yields the joint rank of every left level and every right level.
    """
    def walk(i, j, rank, left, right):
        if i == h1 and j == h2:
            yield tuple(left), tuple(right)
            return
        if i < h1:
            yield from walk(i + 1, j, rank + 1, left + [rank], right)
        if i < h1 and j < h2:
            yield from walk(i + 1, j + 1, rank + 1, left + [rank], right + [rank])
        if j < h2:
            yield from walk(i, j + 1, rank + 1, left, right + [rank])

    yield from walk(0, 0, 0, [], [])


def _threshold_placements(ranks: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Every way to append one more position to a weak order: 2h+1 placements."""
    height = max(ranks) + 1
    for level in range(height):
        yield ranks + (level,)
    for gap in range(height + 1):
        yield tuple(r + 1 if r >= gap else r for r in ranks) + (gap,)


def _guard(o1: WeakOrder, o2: WeakOrder):
    if len(o1) + len(o2) > 2 * config.MAX_ENUM_ARITY:
        raise BudgetExceeded(f"Alignments of lengths {len(o1)} and {len(o2)} exceed the enumeration bound")


@lru_cache(maxsize=1024)
def alignments(o1: WeakOrder, o2: WeakOrder, with_constant: bool = False) -> tuple[Alignment, ...]:
    """All joint weak orders restricting to o1 and o2, sorted.

    With ``with_constant`` every placement of a threshold is added as a last slot.
    """
    _guard(o1, o2)
    found = []
    for left_levels, right_levels in _merges(o1.height, o2.height):
        ranks = tuple(left_levels[r] for r in o1) + tuple(right_levels[r] for r in o2)
        if with_constant:
            found.extend(Alignment(WeakOrder._trusted(p), len(o1), True) for p in _threshold_placements(ranks))
        else:
            found.append(Alignment(WeakOrder._trusted(ranks), len(o1), False))
    return tuple(sorted(found))


def stacked(o1: WeakOrder, o2: WeakOrder) -> Alignment:
    """The alignment with every right entry above every left entry."""
    ranks = o1.ranks + tuple(r + o1.height for r in o2)
    return Alignment(WeakOrder._trusted(ranks), len(o1), False)


MIN_FAMILY = (Kind.MIN, Kind.MI, Kind.MX)

# Output tag of a position settled at one level: (left only, both, right only).
# Positions settled together are ranked by tag; equal tags share a rank.
_SETTLE_TAGS = {
    Kind.MIN: (0, 0, 0),
    Kind.MI: (1, 0, 2),
    Kind.MX: (0, 1, 0),
}


def _level_positions(o: WeakOrder) -> list[list[int]]:
    found = [[] for _ in range(o.height)]
    for p, r in enumerate(o):
        found[r].append(p)
    return found


def _walk_alignment(o1: WeakOrder, o2: WeakOrder, moves: tuple[tuple[int, int], ...]) -> Alignment:
    """Joint order placing levels as in ``moves``, then the rest of o1, then the rest of o2."""
    left, right = [], []
    rank = 0
    for di, dj in moves:
        if di:
            left.append(rank)
        if dj:
            right.append(rank)
        rank += 1
    for _ in range(len(left), o1.height):
        left.append(rank)
        rank += 1
    for _ in range(len(right), o2.height):
        right.append(rank)
        rank += 1
    ranks = tuple(left[r] for r in o1) + tuple(right[r] for r in o2)
    return Alignment(WeakOrder._trusted(ranks), len(o1), False)


def _min_family_images(kind: Kind, o1: WeakOrder, o2: WeakOrder) -> dict[WeakOrder, Alignment]:
    """Images of min, mi or mx on o1 x o2 by a merge walk over the levels.

    The walk places the levels of both orbits bottom-up, one left level, one
    right level or one of each per step. A position is settled by the first
    step that places one of its two levels; its output entry is that step's
    value with the tag of how it was settled. Walk states with the same
    placed levels and the same settled prefix are expanded once, and a walk
    stops as soon as every position is settled.
    """
    if len(o1) != len(o2):
        raise ParseError(f"Orbits of lengths {len(o1)} and {len(o2)} cannot be combined")
    tags = _SETTLE_TAGS[kind]
    at_left, at_right = _level_positions(o1), _level_positions(o2)
    h1, h2 = o1.height, o2.height
    start = (0, 0, (-1,) * len(o1))
    seen = {start}
    stack = [(start, ())]
    images: dict[WeakOrder, Alignment] = {}
    while stack:
        (i, j, prefix), moves = stack.pop()
        if -1 not in prefix:
            image = WeakOrder._trusted(prefix)
            if image not in images:
                images[image] = _walk_alignment(o1, o2, moves)
            continue
        top = max(prefix) + 1
        for di, dj in ((0, 1), (1, 1), (1, 0)):
            if i + di > h1 or j + dj > h2:
                continue
            settled = {}
            for p in (at_left[i] if di else []):
                if prefix[p] < 0:
                    both = dj and o2[p] == j
                    settled[p] = tags[1] if both else tags[0]
            for p in (at_right[j] if dj else []):
                if prefix[p] < 0 and p not in settled:
                    settled[p] = tags[2]
            if settled:
                offset = {t: top + step for step, t in enumerate(sorted(set(settled.values())))}
                nxt = list(prefix)
                for p, t in settled.items():
                    nxt[p] = offset[t]
                state = (i + di, j + dj, tuple(nxt))
            else:
                state = (i + di, j + dj, prefix)
            if state not in seen:
                seen.add(state)
                stack.append((state, moves + ((di, dj),)))
    return images


@lru_cache(maxsize=262_144)
def image_alignments(kind: OpKind, o1: WeakOrder, o2: WeakOrder) -> tuple[tuple[WeakOrder, Alignment], ...]:
    """Distinct image orbits of ``kind`` on o1 x o2, each with one alignment reaching it."""
    if kind.kind in MIN_FAMILY:
        if kind.dual:
            base = _min_family_images(kind.kind, o1.reversed_order(), o2.reversed_order())
            found = {image.reversed_order(): Alignment(al.joint.reversed_order(), al.width, False)
                     for image, al in base.items()}
        else:
            found = _min_family_images(kind.kind, o1, o2)
        return tuple(sorted(found.items()))
    seen: dict[WeakOrder, Alignment] = {}
    for al in relevant_alignments(kind, o1, o2):
        seen.setdefault(orbit_image(kind, al), al)
    return tuple(seen.items())


@lru_cache(maxsize=65_536)
def relevant_alignments(kind: OpKind, o1: WeakOrder, o2: WeakOrder) -> tuple[Alignment, ...]:
    """Alignments that together reach every image orbit of ``kind`` on o1 x o2.

    lex depends on the two orbits only; ll and pp depend on the orbits and on
    where the threshold sits among the left entries; the constant operation
    has one image. For the min family one alignment per image is found by
    the merge walk of ``image_alignments``.
    """
    if kind.kind is Kind.CONST or kind.kind is Kind.LEX:
        return (stacked(o1, o2),)
    if kind.needs_constant:
        found = []
        for placed in _threshold_placements(o1.ranks):
            left_height = max(placed) + 1
            ranks = placed[:-1] + tuple(r + left_height for r in o2) + placed[-1:]
            found.append(Alignment(WeakOrder._trusted(ranks), len(o1), True))
        return tuple(sorted(found))
    return tuple(sorted(al for _, al in image_alignments(kind, o1, o2)))


@lru_cache(maxsize=262_144)
def orbit_image(kind: OpKind, al: Alignment) -> WeakOrder:
    """Output orbit of ``kind`` on any realization of the alignment.

    Raises:
        InconsistentAlignment: if ll or pp is given an alignment without threshold.
    """
    if kind.needs_constant and not al.constant:
        raise InconsistentAlignment(f"Operation {kind} needs an alignment with a threshold slot")
    a, b, q = al.realize()
    return canonicalize(apply(kind, a, b, q if kind.needs_constant else None))
