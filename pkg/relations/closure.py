"""Closure of a relation under one operation, preservation and the derivative.

Closure is a semi-naive worklist over orbits in discovery order: when orbit i
is processed it is combined with every orbit j <= i in both argument orders
(one order for commutative kinds), over one alignment per distinct image.
Each new orbit records the first term that produced it.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from config import config
from errors import BudgetExceeded
from ops.alignment import image_alignments, stacked
from ops.temporal_ops import CONST, LEX, Kind, OpKind
from orbits.weak_order import constant_orbit
from relations.relation import TemporalRelation, kernel
from relations.terms import Apply

logger = get_logger(__name__)


def closure(S: TemporalRelation, kind: OpKind, budget: int | None = None) -> TemporalRelation:
    """Least superset of S preserved by the operation (modulo automorphisms of Q).

    Raises:
        BudgetExceeded: if more than ``budget`` orbits (default config.CLOSURE_BUDGET) appear.
    """
    budget = budget or config.CLOSURE_BUDGET
    order = list(S.sorted_orbits)
    known = set(order)
    terms = {}

    if kind.kind is Kind.CONST:
        zero = constant_orbit(S.n * S.k)
        if zero not in known:
            g = S.term_of(order[0])
            terms[zero] = Apply(CONST, stacked(order[0], order[0]), g, g)
            order.append(zero)
        return S.derive(order, terms)

    def term(orbit):
        return terms[orbit] if orbit in terms else S.term_of(orbit)

    i = 0
    while i < len(order):
        x = order[i]
        for j in range(i + 1):
            y = order[j]
            for left, right in ((x, y), (y, x)) if i != j and not kind.commutative else ((x, y),):
                for image, al in image_alignments(kind, left, right):
                    if image in known:
                        continue
                    known.add(image)
                    order.append(image)
                    terms[image] = Apply(kind, al, term(left), term(right))
                    if len(order) > budget:
                        logger.warning(f"Closure under {kind} passed {budget} orbits")
                        raise BudgetExceeded(f"Closure under {kind} exceeded the budget of {budget} orbits")
        i += 1
    logger.debug(f"Closure under {kind}: {len(S)} -> {len(order)} orbits")
    return S.derive(order, terms)


def preserves(kind: OpKind, R: TemporalRelation) -> bool:
    """Whether R is closed under the operation; stops at the first escaping image."""
    if kind.kind is Kind.CONST:
        return constant_orbit(R.n * R.k) in R.orbits
    members = R.sorted_orbits
    for i, x in enumerate(members):
        for y in (members[:i + 1] if kind.commutative else members):
            for image, _ in image_alignments(kind, x, y):
                if image not in R.orbits:
                    return False
    return True


def common_kernel(S: TemporalRelation) -> frozenset[tuple[int, int]]:
    kernels = [kernel(o) for o in S.sorted_orbits]
    common = kernels[0]
    for k in kernels[1:]:
        common &= k
    return common


def derivative(S: TemporalRelation, budget: int | None = None) -> TemporalRelation:
    """S': the members of the lex-closure of S whose kernel is the common kernel of S."""
    target = common_kernel(S)
    closed = closure(S, LEX, budget)
    kept = [o for o in closed.sorted_orbits if kernel(o) == target]
    logger.debug(f"Derivative keeps {len(kept)} of {len(closed)} lex-closed orbits")
    return closed.derive(kept)
