"""Chase steps and fence chases for the mi, lex and mx min-clean constructions.

A chase step takes members that agree on where component i attains the
common minimum and evaluates a nested operation on them. Either the argmin
sets at component j intersect as well, or the evaluation is a member with a
strictly smaller set M of minimal components, which the caller uses directly.

A chase walks a lifted fence column by column and applies the chase step at
every level, carrying the common argmin from tip to tip.
"""

import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import FoundSingletonM, PreconditionViolation
from minclean.tracked import Tracked, fold, settle
from ops.temporal_ops import LEX, MI, MX, OpKind
from orbits.factor import LiftedFence
from orbits.stats import M_set, min_value, minx
from orbits.weak_order import WeakOrder, ground_of
from relations.relation import TemporalRelation

logger = get_logger(__name__)


def _check_agreement(ts: Sequence[Tracked], i: int, n: int) -> object:
    """Common minimum of the members at component i, after checking the preconditions."""
    parts = [t.components(n) for t in ts]
    for index, p in enumerate(parts):
        if i not in M_set(p):
            raise PreconditionViolation(f"Component {i} is not minimal in member {index}")
    lows = {min_value(p[i]) for p in parts}
    if len(lows) != 1:
        raise PreconditionViolation(f"Members have different minima {sorted(lows)} at component {i}")
    common = frozenset.intersection(*(minx(p[i]) for p in parts))
    if not common:
        raise PreconditionViolation(f"Argmin sets at component {i} do not intersect")
    return lows.pop()


def _smaller_m(result: Tracked, n: int, j: int, kind: OpKind):
    settled = settle(result)
    M = M_set(settled.components(n))
    if len(M) == 1:
        raise FoundSingletonM(f"{kind} step produced a member minimal only at component {min(M)}",
                              witness=settled, orbit=settled.orbit)
    raise PreconditionViolation(
        f"{kind} step dropped component {j} from M; the first member was not min-ready")


def _intersect_step(kind: OpKind, ts: Sequence[Tracked], i: int, j: int, n: int) -> frozenset[int]:
    if len(ts) == 1:
        parts = ts[0].components(n)
        _check_agreement(ts, i, n)
        if min_value(parts[j]) != min_value(parts[i]):
            raise PreconditionViolation(f"Component {j} is not minimal")
        return minx(parts[j])
    _check_agreement(ts, i, n)
    if j not in M_set(ts[0].components(n)):
        raise PreconditionViolation(f"Component {j} is not minimal in the first member")
    result = fold(kind, list(ts))
    parts = result.components(n)
    if min(parts[j]) != min(parts[i]):
        _smaller_m(result, n, j, kind)
    return minx(parts[j])


def mi_intersect_step(ts: Sequence[Tracked], i: int, j: int, n: int = 2) -> frozenset[int]:
    """Common argmin at component j of members agreeing at component i, via nested mi.

    On the common argmin at i every argument equals the common minimum, so the
    nested key there carries only equality tags and is the least key of the
    result. Component j reaches that key exactly on the intersection of the
    argmin sets at j.

    Raises:
        PreconditionViolation: if the members do not agree at component i.
        FoundSingletonM: if the nested evaluation is minimal at a single component.
    """
    return _intersect_step(MI, ts, i, j, n)


def lex_intersect_step(ts: Sequence[Tracked], i: int, j: int, n: int = 2) -> frozenset[int]:
    """The lex counterpart of ``mi_intersect_step``."""
    return _intersect_step(LEX, ts, i, j, n)


def mx_fencing_step(t1: Tracked, t2: Tracked, i: int, j: int, n: int = 2) -> frozenset[int]:
    """Equal argmin at component i forces equal argmin at component j.

    mx(t1, t2) has argmin minx(t1_c) xor minx(t2_c) at every component c when
    that difference is non-empty. At i the difference is empty, so a non-empty
    difference at j makes the result minimal at j alone.

    Raises:
        PreconditionViolation: if the argmin sets at i differ or minima disagree.
        FoundSingletonM: if the argmin sets at j differ.
    """
    p1, p2 = t1.components(n), t2.components(n)
    low = _check_agreement((t1, t2), i, n)
    if minx(p1[i]) != minx(p2[i]):
        raise PreconditionViolation(f"Argmin sets at component {i} differ")
    if min_value(p1[j]) != low or min_value(p2[j]) != low:
        raise PreconditionViolation(f"Component {j} is not minimal in both members")
    if minx(p1[j]) == minx(p2[j]):
        return minx(p1[j])
    result = fold(MX, [t1, t2])
    _smaller_m(result, n, i, MX)


def symmetric_difference_law(a: Sequence, b: Sequence) -> bool:
    """minx(mx(a, b)) is the symmetric difference of the argmin sets when a and b share a minimum."""
    keys = fold(MX, [Tracked(tuple(a)), Tracked(tuple(b))]).values
    diff = minx(a) ^ minx(b)
    return minx(keys) == (diff if diff else minx(a) & minx(b))


@dataclass
class FenceChase:
    """Column sweeps over a lifted fence in a binary relation.

    Every edge of a column is replaced by the canonical representative of its
    orbit; all members then have minimum 0 in both components, which is the
    common-minimum precondition of the chase steps.
    """

    E: TemporalRelation
    fence: LiftedFence
    kind: OpKind = MI
    steps: int = field(default=0, init=False)

    def edge(self, column: int, level: int) -> Tracked:
        return Tracked.member(self.E, self.fence.edge(column, level).orbit)

    def _step(self, members: list[Tracked], i: int, j: int) -> frozenset[int]:
        self.steps += 1
        if self.kind == LEX:
            return lex_intersect_step(members, i, j)
        return mi_intersect_step(members, i, j)

    def _sweep(self, columns: list[int], upward: bool) -> frozenset[int]:
        m = self.fence.fence.m
        levels = range(m) if upward else range(m - 1, -1, -1)
        common = frozenset()
        for level in levels:
            members = [self.edge(c, level) for c in columns]
            common = self._step(members, 0, 1) if upward else self._step(members, 1, 0)
        return common

    def intersection(self) -> frozenset[int]:
        """Common argmin of every lower tip of the fence."""
        segments = len(self.fence.fence.segments)
        active = [0]
        self._sweep(active, upward=True)
        active.append(1)
        common = self._sweep(active, upward=False)
        for s in range(1, segments):
            active.append(2 * s)
            self._sweep(active, upward=True)
            active.append(2 * s + 1)
            common = self._sweep(active, upward=False)
        logger.debug(f"Chase over {segments} segments took {self.steps} steps, common argmin {sorted(common)}")
        return common

    def equality(self) -> frozenset[int]:
        """Argmin shared by every lower tip, proved pairwise with mx down each segment."""
        m = self.fence.fence.m
        shared = None
        for s in range(len(self.fence.fence.segments)):
            up, down = 2 * s, 2 * s + 1
            for level in range(m - 1, -1, -1):
                self.steps += 1
                mx_fencing_step(self.edge(up, level), self.edge(down, level), 1, 0)
            tip = minx(ground_of(self.fence.fence.tips[s]).values)
            if shared is not None and tip != shared:
                raise PreconditionViolation("Consecutive tips have different argmin sets")
            shared = tip
        return shared


def chase_intersection(E: TemporalRelation, fence: LiftedFence, kind: OpKind = MI) -> frozenset[int]:
    return FenceChase(E, fence, kind).intersection()


def chase_equality(E: TemporalRelation, fence: LiftedFence) -> frozenset[int]:
    return FenceChase(E, fence, MX).equality()


def direct_intersection(vertices) -> frozenset[int]:
    """Intersection of the argmin sets of a set of orbits."""
    sets = [minx(v.ranks if isinstance(v, WeakOrder) else v) for v in vertices]
    return frozenset.intersection(*sets)


