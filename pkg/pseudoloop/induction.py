"""Pseudo-loops by induction on the dimension k.

Every level finds a min-clean certificate, turns it into a slice plan that
settles the coordinates I, recurses on the projection of the relation to the
remaining coordinates and lifts the pseudo-loop found there to the least
member above it. Applying the plan to that member gives a pseudo-loop: on I
all components agree by the plan, on the rest they keep the order types of
the lifted member, and I carries the smallest values everywhere.

For ll the recursion stays inside the members whose kernel is the common
kernel of the derivative, which is where ll_q slices are well defined.
"""

import os
import sys
from dataclasses import dataclass

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import ContractViolation, HypothesisViolation, ParseError
from minclean.binary import length_one_component, minclean_lex
from minclean.certificate import MinCleanCertificate
from minclean.hypergraph import loop_cyclic_min, minclean_certificate, minclean_hyp
from minclean.tracked import Tracked, check_contract
from ops.temporal_ops import LEX, LL, MI, MIN, MX, PP, Kind, OpKind, dual_of
from orbits.stats import is_loop, is_pseudo_loop
from orbits.weak_order import GroundTuple, WeakOrder
from pseudoloop.slices import SlicePlan, apply_plan, slice_hyp, slice_ll, slice_pp
from relations.closure import common_kernel, derivative
from relations.relation import TemporalRelation, is_smooth, kernel
from relations.relation_io import term_to_document
from relations.structure import PseudoLoopDocument
from relations.terms import Term, dualize_term

logger = get_logger(__name__)


@dataclass(frozen=True)
class PseudoLoop:
    """A member all of whose components lie in one orbit, with its witness term."""

    components: tuple[GroundTuple, ...]
    term: Term | None
    clone: OpKind

    @classmethod
    def from_tracked(cls, tracked: Tracked, n: int, clone: OpKind) -> "PseudoLoop":
        """Raises ContractViolation if the components do not share an orbit."""
        if not is_pseudo_loop(tracked.values, n):
            raise ContractViolation(f"{tracked.orbit} is not a pseudo-loop")
        return cls(GroundTuple(tracked.values).components(n), tracked.term, clone)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def flat(self) -> GroundTuple:
        return GroundTuple(tuple(v for c in self.components for v in c))

    @property
    def orbit(self) -> WeakOrder:
        return self.flat.orbit

    @property
    def shared_orbit(self) -> WeakOrder:
        return self.components[0].orbit

    @property
    def is_loop(self) -> bool:
        return is_loop(self.flat.values, self.n)

    def negated(self) -> "PseudoLoop":
        """The pseudo-loop of -R for the dual operation."""
        term = dualize_term(self.term) if self.term is not None else None
        return PseudoLoop(tuple(c.negated() for c in self.components), term, dual_of(self.clone))

    def to_document(self, basis=()) -> PseudoLoopDocument:
        return PseudoLoopDocument(
            clone=str(self.clone),
            components=[c.to_list() for c in self.components],
            orbit=self.orbit.to_list(),
            shared_orbit=self.shared_orbit.to_list(),
            is_loop=self.is_loop,
            term=term_to_document(self.term, basis),
        )


def _least(R: TemporalRelation) -> Tracked:
    return Tracked.member(R, R.sorted_orbits[0])


def _lift(domain: TemporalRelation, rest: list[int], target: WeakOrder) -> Tracked:
    """Least member of ``domain`` whose restriction to the coordinates ``rest`` is ``target``."""
    positions = domain.coordinate_positions(rest)
    for o in domain.sorted_orbits:
        if o.restrict(positions) == target:
            return Tracked.member(domain, o)
    raise HypothesisViolation(f"No member restricts to {target} on coordinates {rest}")


def _finish(plan: SlicePlan, domain: TemporalRelation, cert: MinCleanCertificate,
            inner: WeakOrder | None, depth: int) -> Tracked:
    member = cert.tracked() if inner is None else _lift(domain, plan.rest, inner)
    result = apply_plan(plan, member, domain)
    check_contract(lambda: is_pseudo_loop(result.values, domain.n),
                   f"Level {depth}: slice image {result.orbit} is not a pseudo-loop")
    logger.debug(f"Level {depth} (k={domain.k}): pseudo-loop {result.orbit}")
    return result


def _kernel_part(R: TemporalRelation, target: frozenset) -> TemporalRelation:
    kept = [o for o in R.orbits if kernel(o) == target]
    if not kept:
        raise HypothesisViolation("No member has the common kernel of the derivative")
    return R.derive(kept)


def _pp_induction(R: TemporalRelation, kind: OpKind, depth: int = 0) -> Tracked:
    if R.k == 1:
        return _least(R)
    cert = minclean_certificate(R, kind)
    plan = slice_pp(R, cert) if R.n == 2 else slice_hyp(R, cert, PP)
    inner = None
    if plan.rest:
        inner = _pp_induction(R.project_coordinates(plan.rest), kind, depth + 1).orbit
    return _finish(plan, R, cert, inner, depth)


def _ll_induction(E: TemporalRelation, S: TemporalRelation, depth: int = 0) -> Tracked:
    Sprime = derivative(S)
    if E.k == 1:
        return _least(Sprime)
    T = _kernel_part(E, common_kernel(Sprime))
    cert = minclean_lex(S, Sprime=Sprime)
    plan = slice_ll(Sprime, cert)
    inner = None
    if plan.rest:
        inner = _ll_induction(T.project_coordinates(plan.rest), S.project_coordinates(plan.rest), depth + 1).orbit
    return _finish(plan, T, cert, inner, depth)


def _hyp_ll_induction(R: TemporalRelation, depth: int = 0) -> Tracked:
    Rprime = derivative(R)
    if R.k == 1:
        return _least(Rprime)
    T = _kernel_part(R, common_kernel(Rprime))
    cert = minclean_hyp(R, LEX, Rprime)
    plan = slice_hyp(Rprime, cert, LL)
    inner = None
    if plan.rest:
        inner = _hyp_ll_induction(T.project_coordinates(plan.rest), depth + 1).orbit
    return _finish(plan, T, cert, inner, depth)


def pseudoloop_binary(E: TemporalRelation, kind: OpKind) -> PseudoLoop:
    """Pseudo-loop of a smooth binary relation of pseudo-algebraic length 1 preserved by min, mi or mx."""
    if E.n != 2:
        raise ParseError(f"Expected a binary relation, got arity {E.n}")
    if kind not in (MIN, MI, MX):
        raise ParseError(f"The pp induction runs with min, mi or mx, not {kind}")
    if not is_smooth(E):
        raise HypothesisViolation("The relation is not smooth")
    length_one_component(E)
    logger.info(f"Binary {kind} induction on k={E.k} over {len(E)} orbits")
    return PseudoLoop.from_tracked(_pp_induction(E, kind), 2, kind)


def pseudoloop_ll(E: TemporalRelation, S: TemporalRelation | None = None) -> PseudoLoop:
    """Pseudo-loop of an ll-closed binary relation, inside the derivative's kernel part.

    Without S, the restriction of E to its first factor component of
    algebraic length 1 is used.
    """
    if E.n != 2:
        raise ParseError(f"Expected a binary relation, got arity {E.n}")
    if S is None:
        factor, index = length_one_component(E)
        S = E.restrict_component(factor.components[index])
        logger.info(f"ll: component {index} with {len(factor.components[index])} vertices, {len(S)} edges")
    if not is_smooth(S):
        raise HypothesisViolation("The subrelation S is not smooth")
    return PseudoLoop.from_tracked(_ll_induction(E, S), 2, LL)


def pseudoloop_hyp(R: TemporalRelation, kind: OpKind) -> PseudoLoop:
    """Pseudo-loop of a cyclic 2-transitive relation of arity at least 3.

    min gives a genuine loop directly; mi and mx run the pp induction; ll runs
    inside the derivative of R.
    """
    if R.n < 3:
        raise ParseError(f"Hypergraph induction needs arity at least 3, got {R.n}")
    logger.info(f"Hypergraph {kind} induction: n={R.n}, k={R.k}, {len(R)} orbits")
    if kind.kind is Kind.MIN:
        return PseudoLoop.from_tracked(loop_cyclic_min(R).tracked(), R.n, kind)
    if kind.kind in (Kind.MI, Kind.MX):
        return PseudoLoop.from_tracked(_pp_induction(R, kind), R.n, kind)
    if kind.kind is Kind.LL:
        return PseudoLoop.from_tracked(_hyp_ll_induction(R), R.n, kind)
    raise ParseError(f"No hypergraph induction for {kind}")
