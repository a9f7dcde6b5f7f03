"""Min-clean members of cyclic, 2-transitive hypergraph relations (n >= 3).

Index rearrangements are never searched for abstractly: the invariance group
of the relation is enumerated once and the permuted copy of a member is looked
up in the relation, so every copy used below carries its own witness term.
"""

import os
import sys
from dataclasses import dataclass

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import HypothesisViolation, ParseError
from minclean.binary import minclean_binary, minclean_lex
from minclean.certificate import MinCleanCertificate, certify, fast_path
from minclean.chase import direct_intersection, lex_intersect_step, mi_intersect_step
from minclean.tracked import Tracked, check_contract, cyclic_shifts, fold, permuted, settle
from ops.temporal_ops import MIN, MX, Kind, OpKind
from orbits.stats import M_set, is_loop, is_min_clean, minx
from relations.closure import derivative
from relations.relation import Permutation, SymmetryGroup, TemporalRelation, invariance_group, is_cyclic

logger = get_logger(__name__)


@dataclass(frozen=True)
class DichotomyResult:
    """Either a member minimal in one component only, or every member has M full."""

    certificate: MinCleanCertificate | None
    all_full: bool


def moving(group: SymmetryGroup, images: dict[int, int]) -> Permutation:
    """The group element with g(i) = images[i] moving the fewest points (ties: least).

    Raises:
        HypothesisViolation: if no element of the group has these images.
    """
    found = [g for g in group.elements if all(g[i] == v for i, v in images.items())]
    if not found:
        raise HypothesisViolation(f"No invariance permutation maps {images}")
    return min(found, key=lambda g: (sum(g[i] != i for i in range(len(g))), g))


def _require_hypergraph(R: TemporalRelation, cyclic: bool = True) -> SymmetryGroup:
    if R.n < 3:
        raise ParseError(f"Hypergraph constructions need arity at least 3, got {R.n}")
    if cyclic and not is_cyclic(R):
        raise HypothesisViolation("The relation is not cyclic")
    group = invariance_group(R)
    if not group.is_two_transitive():
        raise HypothesisViolation("The relation is not invariant under a 2-transitive group")
    return group


def loop_cyclic_min(R: TemporalRelation) -> MinCleanCertificate:
    """A loop of a cyclic min-closed relation.

    Component j of the nested min over all cyclic shifts of a member is the
    entrywise minimum of every component, whatever j is.
    """
    if R.n < 2:
        raise ParseError(f"Loops need arity at least 2, got {R.n}")
    if not is_cyclic(R):
        raise HypothesisViolation("The relation is not cyclic")
    for o in R.sorted_orbits:
        if is_loop(o.ranks, R.n):
            return certify(Tracked.member(R, o), R, MIN)
    shifts = cyclic_shifts(R, Tracked.member(R, R.sorted_orbits[0]))
    certificate = certify(fold(MIN, shifts), R, MIN)
    check_contract(lambda: is_loop(certificate.flat.values, R.n), f"{certificate.orbit} is not a loop")
    return certificate


def min_ready_dichotomy(R: TemporalRelation, kind: OpKind, group: SymmetryGroup | None = None) -> DichotomyResult:
    """A member with |M| = 1, or the verified fact that every member has |M| = n.

    A member with 1 < |M| < n is combined with copies that keep a in M and move
    every other index of M outside of it; the nested operation is then minimal
    at a alone.
    """
    if kind.kind not in (Kind.MI, Kind.LEX):
        raise ParseError(f"The dichotomy is stated for mi and lex, not {kind}")
    group = group or invariance_group(R)
    if not group.is_two_transitive():
        raise HypothesisViolation("The relation is not invariant under a 2-transitive group")
    n = R.n
    partial = None
    for o in R.sorted_orbits:
        t = Tracked.member(R, o)
        M = M_set(t.components(n))
        if len(M) == 1:
            return DichotomyResult(certify(t, R, kind), False)
        if len(M) < n and partial is None:
            partial = (t, M)
    if partial is None:
        logger.debug(f"{kind}: all {len(R)} members have M full")
        return DichotomyResult(None, True)

    t, M = partial
    a = min(M)
    outside = min(set(range(n)) - M)
    copies = [permuted(R, t, moving(group, {a: a, i: outside})) for i in sorted(M - {a})]
    result = settle(fold(kind, [t] + copies))
    check_contract(lambda: M_set(result.components(n)) == {a},
                   f"{kind} over {len(copies)} copies is not minimal at component {a} alone")
    logger.debug(f"{kind}: member with M={sorted(M)} reduced to M={{{a}}}")
    return DichotomyResult(certify(result, R, kind), False)


def common_argmin_chain(R: TemporalRelation, kind: OpKind, group: SymmetryGroup, t: Tracked) -> frozenset[int]:
    """Intersection of the argmin sets of all components of a member with M full.

    First minx(t_0) and minx(t_1) meet. Copies fixing component 0 and moving
    every other component into position 1 give the common argmin of t_1..t_{n-1};
    copies fixing 1 and moving the rest into 0 give that of t_0, t_2, ..., and one
    more step on the two results, the second one swapped, meets them.
    """
    n = R.n
    step = lex_intersect_step if kind.kind is Kind.LEX else mi_intersect_step

    step([t, permuted(R, t, moving(group, {0: 1, 2: 2}))], 2, 0, n)

    upper = [t] + [permuted(R, t, moving(group, {0: 0, 1: i})) for i in range(2, n)]
    step(upper, 0, 1, n)
    u = settle(fold(kind, upper))

    lower = [t] + [permuted(R, t, moving(group, {1: 1, 0: i})) for i in range(2, n)]
    step(lower, 1, 0, n)
    v = settle(fold(kind, lower))

    common = step([u, permuted(R, v, moving(group, {0: 1, 1: 0}))], 0, 1, n)
    direct = direct_intersection(t.components(n))
    check_contract(lambda: common == direct, f"Chained argmin {sorted(common)} differs from {sorted(direct)}")
    logger.debug(f"{kind}: common argmin {sorted(common)} of {t.orbit}")
    return common


def mx_repair(R: TemporalRelation, group: SymmetryGroup, t: Tracked) -> Tracked:
    """Apply mx(t, sigma t) with sigma swapping two minimal components until min-clean.

    The argmin set of mx at a component is the symmetric difference of the two
    argmin sets there, so the swapped pair ends up with equal argmin sets.

    Raises:
        HypothesisViolation: if the repair revisits an orbit.
    """
    n = R.n
    seen = set()
    current = settle(t)
    while True:
        parts = current.components(n)
        if is_min_clean(parts):
            return current
        if current.orbit in seen:
            raise HypothesisViolation(f"mx repair cycles at {current.orbit}")
        seen.add(current.orbit)
        M = sorted(M_set(parts))
        a, b = next((a, b) for a in M for b in M if a < b and minx(parts[a]) != minx(parts[b]))
        sigma = moving(group, {a: b, b: a})
        logger.debug(f"mx repair: swapping components {a} and {b} with {sigma}")
        current = settle(fold(MX, [current, permuted(R, current, sigma)]))


def minclean_hyp(R: TemporalRelation, kind: OpKind, Rprime: TemporalRelation | None = None) -> MinCleanCertificate:
    """A min-clean member of R (mi, mx) or of R' (lex).

    Raises:
        HypothesisViolation: if R is not cyclic (mi, lex) or not 2-transitive.
    """
    if kind.kind is Kind.MX:
        group = _require_hypergraph(R, cyclic=False)
        found = fast_path(R, MX)
        if found:
            return found
        return certify(mx_repair(R, group, Tracked.member(R, R.sorted_orbits[0])), R, MX)

    if kind.kind not in (Kind.MI, Kind.LEX):
        raise ParseError(f"No hypergraph min-clean construction for {kind}")
    _require_hypergraph(R)
    target = R
    if kind.kind is Kind.LEX:
        target = Rprime or derivative(R)
    group = invariance_group(target)
    found = fast_path(target, kind)
    if found:
        return found
    split = min_ready_dichotomy(target, kind, group)
    if split.certificate is not None:
        return split.certificate
    t = Tracked.member(target, target.sorted_orbits[0])
    common_argmin_chain(target, kind, group, t)
    return certify(fold(kind, cyclic_shifts(target, t)), target, kind)


def minclean_certificate(R: TemporalRelation, kind: OpKind, Rprime: TemporalRelation | None = None) -> MinCleanCertificate:
    """Dispatch on arity and operation."""
    if R.n == 2:
        if kind.kind is Kind.LEX:
            return minclean_lex(R, Sprime=Rprime)
        return minclean_binary(R, kind)
    if kind.kind is Kind.MIN:
        return loop_cyclic_min(R)
    return minclean_hyp(R, kind, Rprime)
