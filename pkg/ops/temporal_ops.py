"""The canonical binary temporal operations and their duals.

Operations are never evaluated to rational numbers. Each output entry is a
``LayeredValue``: a key whose order among the other output entries is exactly
the order the real operation would produce. The output orbit is therefore a
function of the input values alone.

Key shapes, with a ground value v entering as ``(v,)``:

* min:   the smaller of the two (flat) keys
* mi:    smaller key plus a tag, 0 for x = y, 1 for x < y, 2 for x > y
* mx:    smaller key plus a tag, 0 for x != y, 1 for x = y
* lex:   the pair (x, y)
* pp_q:  (0, x) if x <= q else (1, y)
* ll_q:  (0, x, y) if x <= q else (1, y, x)
* const: (0,)

Flat keys of unequal depth are padded with zeros before min-type
comparisons, so a ground value v behaves like (v, 0, ...): the embedding of
the earlier stage is the identity on values that already occur.
"""

import os
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from errors import DepthMismatch, ParseError
from orbits.weak_order import GroundTuple


class Kind(str, Enum):
    MIN = "min"
    MI = "mi"
    MX = "mx"
    LEX = "lex"
    LL = "ll"
    PP = "pp"
    CONST = "const"


@dataclass(frozen=True, order=True)
class OpKind:
    """An operation tag with its dual flag; ll and pp take a threshold at application time."""

    kind: Kind
    dual: bool = False

    @classmethod
    def parse(cls, tag: str) -> "OpKind":
        """Parse ``min``, ``dual:mi``, ``max`` (dual min) and friends."""
        text = tag.strip().lower()
        if text == "max":
            return cls(Kind.MIN, True)
        dual = text.startswith("dual:")
        if dual:
            text = text[len("dual:"):]
        try:
            return cls(Kind(text), dual)
        except ValueError as e:
            raise ParseError(f"Unknown operation tag: {tag!r}") from e

    @property
    def needs_constant(self) -> bool:
        return self.kind in (Kind.LL, Kind.PP)

    @property
    def commutative(self) -> bool:
        """f(a, b) = f(b, a): the images on o1 x o2 and on o2 x o1 coincide."""
        return self.kind in (Kind.MIN, Kind.MX, Kind.CONST)

    @property
    def base(self) -> "OpKind":
        return OpKind(self.kind)

    def __str__(self) -> str:
        return f"dual:{self.kind.value}" if self.dual else self.kind.value


MIN = OpKind(Kind.MIN)
MI = OpKind(Kind.MI)
MX = OpKind(Kind.MX)
LEX = OpKind(Kind.LEX)
LL = OpKind(Kind.LL)
PP = OpKind(Kind.PP)
CONST = OpKind(Kind.CONST)
MAX = OpKind(Kind.MIN, True)

# The kinds whose pseudo-loop construction is implemented, plain and dual.
SUPPORTED = (MIN, MI, MX, LL, CONST)


def dual_of(kind: OpKind) -> OpKind:
    return OpKind(kind.kind, not kind.dual)


class LayeredValue(tuple):
    """Comparison key of an operation output entry (lexicographic tuple order)."""

    def __repr__(self) -> str:
        return "LV" + tuple.__repr__(self)

    @property
    def flat(self) -> bool:
        return all(not isinstance(part, tuple) for part in self)


def lift(value) -> LayeredValue:
    """Key of a ground value; keys pass through unchanged."""
    if isinstance(value, LayeredValue):
        return value
    if isinstance(value, tuple):
        return LayeredValue(value)
    return LayeredValue((value,))


def lift_tuple(t) -> tuple[LayeredValue, ...]:
    if isinstance(t, GroundTuple):
        t = t.values
    return tuple(lift(v) for v in t)


def _pad(x: LayeredValue, y: LayeredValue) -> tuple[LayeredValue, LayeredValue]:
    if len(x) == len(y) or not (x.flat and y.flat):
        return x, y
    depth = max(len(x), len(y))
    return (LayeredValue(tuple(x) + (0,) * (depth - len(x))),
            LayeredValue(tuple(y) + (0,) * (depth - len(y))))


def _negate_key(value):
    if isinstance(value, tuple):
        return LayeredValue(tuple(_negate_key(part) for part in value))
    return -value


def _entry(kind: Kind, x: LayeredValue, y: LayeredValue, q: LayeredValue | None) -> LayeredValue:
    if kind is Kind.CONST:
        return LayeredValue((0,))
    if kind is Kind.LEX:
        return LayeredValue((x, y))
    if kind is Kind.PP:
        return LayeredValue((0, x)) if x <= q else LayeredValue((1, y))
    if kind is Kind.LL:
        return LayeredValue((0, x, y)) if x <= q else LayeredValue((1, y, x))
    x, y = _pad(x, y)
    low = x if x <= y else y
    if kind is Kind.MIN:
        return low
    if kind is Kind.MI:
        tag = 0 if x == y else (1 if x < y else 2)
    else:
        tag = 0 if x != y else 1
    return LayeredValue(tuple(low) + (tag,))


def apply(kind: OpKind, a: Sequence, b: Sequence, q=None) -> tuple[LayeredValue, ...]:
    """Apply a binary operation entrywise and return the output keys.

    Args:
        kind: the operation
        a, b: tuples of ground values or keys, equally long
        q: threshold for ll and pp, a value or key comparable with the entries of a

    Raises:
        ParseError: on length mismatch or a missing threshold.
        DepthMismatch: when keys of incompatible shape are compared.
    """
    a, b = lift_tuple(a), lift_tuple(b)
    if len(a) != len(b):
        raise ParseError(f"Operands have different lengths {len(a)} and {len(b)}")
    if kind.needs_constant:
        if q is None:
            raise ParseError(f"Operation {kind} needs a threshold")
        q = lift(q)
    if kind.dual:
        a = tuple(_negate_key(x) for x in a)
        b = tuple(_negate_key(y) for y in b)
        q = _negate_key(q) if q is not None else None
    try:
        keys = tuple(_entry(kind.kind, x, y, q) for x, y in zip(a, b))
    except TypeError as e:
        raise DepthMismatch(f"Incompatible keys for {kind}: {e}") from e
    if kind.dual:
        keys = tuple(_negate_key(k) for k in keys)
    return keys


def nested_apply(kind: OpKind, ts: Sequence[Sequence], q=None) -> tuple[LayeredValue, ...]:
    """Right-nested power f(t1, f(t2, ..., f(t_{m-1}, t_m)))."""
    if len(ts) < 2:
        raise ParseError(f"A nested application needs at least two tuples, got {len(ts)}")
    acc = lift_tuple(ts[-1])
    for t in reversed(ts[:-1]):
        acc = apply(kind, t, acc, q)
    return acc


def negate(t: GroundTuple) -> GroundTuple:
    return t.negated()


