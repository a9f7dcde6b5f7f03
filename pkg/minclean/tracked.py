"""Tuples that carry the witness term producing them.

Every construction in the min-clean and slice constructions is a nested application
of one operation to concrete tuples. ``Tracked`` keeps the flat values (ground
numbers or layered keys) together with a term over the relation's basis, and
``fold`` extends both in lockstep, so the term of a result always evaluates to
the orbit of its values.
"""

import os
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from config import config
from errors import ContractViolation
from ops.alignment import Alignment, alignment_of, stacked
from ops.temporal_ops import Kind, LayeredValue, OpKind, apply, lift, lift_tuple
from orbits.stats import split
from orbits.weak_order import GroundTuple, WeakOrder, canonicalize, ground_of
from relations.relation import TemporalRelation, permute_orbit
from relations.terms import Apply, Term

logger = get_logger(__name__)


@dataclass(frozen=True)
class Tracked:
    values: tuple
    term: Term | None = None

    @classmethod
    def member(cls, R: TemporalRelation, orbit: WeakOrder) -> "Tracked":
        """Canonical representative of a member orbit with its witness term."""
        return cls(ground_of(orbit).values, R.term_of(orbit))

    @classmethod
    def realized(cls, R: TemporalRelation, ground: GroundTuple) -> "Tracked":
        """A given realization of a member orbit."""
        return cls(ground.values, R.term_of(ground.orbit))

    @property
    def orbit(self) -> WeakOrder:
        return canonicalize(self.values)

    def components(self, n: int) -> tuple[tuple, ...]:
        return split(self.values, n)

    def ground(self) -> GroundTuple:
        return GroundTuple(self.values)


def _flat_pad(left: tuple, right: tuple) -> tuple[tuple, tuple]:
    left, right = lift_tuple(left), lift_tuple(right)
    keys = left + right
    if not all(k.flat for k in keys):
        return left, right
    depth = max(len(k) for k in keys)

    def pad(k):
        return LayeredValue(tuple(k) + (0,) * (depth - len(k)))

    return tuple(pad(k) for k in left), tuple(pad(k) for k in right)


def step_alignment(kind: OpKind, left: Sequence, right: Sequence, q=None) -> Alignment:
    """The alignment under which ``apply(kind, left, right, q)`` is realized."""
    if kind.needs_constant:
        placed = canonicalize(lift_tuple(left) + (lift(q),)).ranks
        height = max(placed) + 1
        joint = placed[:-1] + tuple(r + height for r in canonicalize(right).ranks) + placed[-1:]
        return Alignment(WeakOrder._trusted(joint), len(left), True)
    if kind.kind in (Kind.LEX, Kind.CONST):
        return stacked(canonicalize(left), canonicalize(right))
    padded_left, padded_right = _flat_pad(tuple(left), tuple(right))
    return alignment_of(padded_left, padded_right)


def fold(kind: OpKind, items: Sequence[Tracked], q=None) -> Tracked:
    """Right-nested application f(t1, f(t2, ..., f(t_{m-1}, t_m))) with its term."""
    acc = items[-1]
    for item in reversed(items[:-1]):
        keys = apply(kind, item.values, acc.values, q)
        term = None
        if item.term is not None and acc.term is not None:
            al = step_alignment(kind, item.values, acc.values, q)
            term = Apply(kind, al, item.term, acc.term)
        acc = Tracked(keys, term)
    return acc


def settle(tracked: Tracked) -> Tracked:
    """Replace layered keys by the canonical integer representative of their orbit."""
    return Tracked(ground_of(tracked.orbit).values, tracked.term)


def permuted(R: TemporalRelation, tracked: Tracked, perm: Sequence[int]) -> Tracked:
    """The member with components (t_{perm(0)}, ..., t_{perm(n-1)})."""
    parts = tracked.components(R.n)
    values = tuple(v for j in range(R.n) for v in parts[perm[j]])
    term = R.term_of(permute_orbit(tracked.orbit, tuple(perm), R.k)) if tracked.term is not None else None
    return Tracked(values, term)


def cyclic_shifts(R: TemporalRelation, tracked: Tracked, right: bool = False) -> list[Tracked]:
    """All n rotations of a member, starting with the member itself.

    With ``right`` the l-th rotation moves component i to position i + l.
    """
    n = R.n
    shifts = []
    for step in range(n):
        perm = tuple((j - step) % n if right else (j + step) % n for j in range(n))
        shifts.append(tracked if step == 0 else permuted(R, tracked, perm))
    return shifts


def check_contract(condition: Callable[[], bool], message: str):
    """Evaluate a postcondition when contract checks are on.

    Raises:
        ContractViolation: if the condition is false.
    """
    if not config.CHECK_CONTRACTS:
        return
    if not condition():
        logger.error(f"Contract violated: {message}")
        raise ContractViolation(message)
