"""Slice plans: nested pp_q / ll_q prefixes that settle a block of coordinates.

A plan is built once from a min-clean certificate. Applying it to a member u
of the relation evaluates f(u^1, f(u^2, ..., f(u^l, u))) for the plan's
operation f with threshold q. On the coordinates I the result no longer
depends on u: they carry the m smallest values, identically in every
component. On the remaining coordinates every component keeps the order type
it had in u.

For ll every tuple involved must have the same kernel, otherwise ties on I or
on the rest are broken by the prefix.
"""

import os
import sys
from dataclasses import dataclass
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import HypothesisViolation, KernelMismatch, ParseError
from minclean.certificate import MinCleanCertificate
from minclean.tracked import Tracked, check_contract, cyclic_shifts, fold, settle
from ops.temporal_ops import LL, PP, Kind, OpKind
from orbits.stats import minx, sim_I, split, stats
from orbits.weak_order import GroundTuple, canonicalize, extend_ground
from relations.closure import common_kernel
from relations.relation import TemporalRelation, is_cyclic, kernel

logger = get_logger(__name__)


@dataclass(frozen=True)
class SlicePlan:
    kind: OpKind
    n: int
    k: int
    I: frozenset[int]
    m: int
    q: object
    prefix: tuple[Tracked, ...]
    kernel: frozenset | None = None

    @property
    def rest(self) -> list[int]:
        return [c for c in range(self.k) if c not in self.I]

    def to_dict(self) -> dict:
        return {
            "kind": str(self.kind),
            "I": sorted(self.I),
            "m": self.m,
            "q": self.q if isinstance(self.q, int) else str(self.q),
            "prefix": [list(canonicalize(t.values).ranks) for t in self.prefix],
        }


def slice_holds(plan: SlicePlan, before: Sequence, after: Sequence) -> bool:
    """Both postconditions of a slice for one input and its image."""
    old, new = split(before, plan.n), split(after, plan.n)
    rest = plan.rest
    if not all(sim_I(a, b, rest) for a, b in zip(new, old)):
        return False
    if plan.n == 2:
        u, v = new
        return (stats(u).I(plan.m) == plan.I == stats(v).I(plan.m)) and sim_I(u, v, plan.I)
    return all(stats(c).I(plan.m) == plan.I for c in new)


def apply_plan(plan: SlicePlan, member: Tracked, domain: TemporalRelation | None = None) -> Tracked:
    """Evaluate the plan on a member.

    Raises:
        KernelMismatch: for ll plans, if the member's kernel is not the plan's kernel.
        ContractViolation: if a postcondition fails while contract checks are on.
    """
    if plan.kernel is not None and kernel(member.orbit) != plan.kernel:
        raise KernelMismatch(f"{member.orbit} does not have the common kernel of the plan")
    result = settle(fold(plan.kind, list(plan.prefix) + [member], plan.q))
    check_contract(lambda: slice_holds(plan, member.values, result.values),
                   f"{plan.kind} slice on I={sorted(plan.I)} fails for {member.orbit}")
    if domain is not None:
        check_contract(lambda: result.orbit in domain.orbits, f"Slice image {result.orbit} is not a member")
    return result


def _extend(D: TemporalRelation, values: GroundTuple, block: int) -> GroundTuple:
    """Least member of D realized with ``values`` in the given block."""
    target = canonicalize(values)
    for o in D.sorted_orbits:
        if o.block(block, D.k) == target:
            return extend_ground(o, {block * D.k + c: values[c] for c in range(D.k)})
    raise HypothesisViolation(f"No edge has {target} in component {block}; the relation is not smooth")


def _binary_slice(D: TemporalRelation, cert: MinCleanCertificate, kind: OpKind,
                  kernel_of_plan: frozenset | None) -> SlicePlan:
    if D.n != 2:
        raise ParseError(f"Binary slices need a binary relation, got arity {D.n}")
    if kernel_of_plan is not None and kernel(cert.orbit) != kernel_of_plan:
        raise KernelMismatch(f"Certificate {cert.orbit} does not have the common kernel")
    k = D.k
    first = cert.tracked()
    u1, v1 = cert.components
    low_u, low_v = min(u1), min(v1)
    prefix = [first]
    if low_u == low_v:
        q = low_u
        I = frozenset(cert.common_minx)
    else:
        lead = 0 if low_u < low_v else 1
        q = min(low_u, low_v)
        current = u1 if lead == 0 else v1
        I = minx(current.values)
        for _ in range(k + 1):
            edge = _extend(D, current, 1 - lead)
            prefix.append(Tracked.realized(D, edge))
            current = edge.components(2)[lead]
            J = frozenset(c for c, x in enumerate(current) if x <= q) - I
            logger.debug(f"{kind} slice: block {sorted(J)} from {edge}")
            if not J:
                break
            I = I | J
    trial = settle(fold(kind, prefix + [first], q))
    u_new = split(trial.values, 2)[0]
    m = len({u_new[c] for c in I})
    plan = SlicePlan(kind, 2, k, frozenset(I), m, q, tuple(prefix), kernel_of_plan)
    logger.debug(f"{kind} slice: I={sorted(I)}, m={m}, q={q}, {len(prefix)} prefix edges")
    return plan


def slice_pp(E: TemporalRelation, cert: MinCleanCertificate) -> SlicePlan:
    """pp_q slice of a smooth binary relation."""
    return _binary_slice(E, cert, PP, None)


def slice_ll(Sprime: TemporalRelation, cert: MinCleanCertificate) -> SlicePlan:
    """ll_q slice inside a derivative; every member shares the common kernel."""
    return _binary_slice(Sprime, cert, LL, common_kernel(Sprime))


def slice_hyp(R: TemporalRelation, cert: MinCleanCertificate, kind: OpKind = PP) -> SlicePlan:
    """Slice of a cyclic relation by the right cyclic shifts of a certificate.

    The certificate is first rotated so that component 0 is minimal; q is its
    minimum and I its argmin set.
    """
    if kind.kind not in (Kind.PP, Kind.LL):
        raise ParseError(f"Slices use pp or ll, not {kind}")
    if R.n < 3:
        raise ParseError(f"Hypergraph slices need arity at least 3, got {R.n}")
    if not is_cyclic(R):
        raise HypothesisViolation("The relation is not cyclic")
    kernel_of_plan = common_kernel(R) if kind.kind is Kind.LL else None
    if kernel_of_plan is not None and kernel(cert.orbit) != kernel_of_plan:
        raise KernelMismatch(f"Certificate {cert.orbit} does not have the common kernel")
    start = cyclic_shifts(R, cert.tracked())[min(cert.M)]
    prefix = cyclic_shifts(R, start, right=True)
    lead = start.components(R.n)[0]
    q = min(lead)
    plan = SlicePlan(OpKind(kind.kind), R.n, R.k, minx(lead), 1, q, tuple(prefix), kernel_of_plan)
    logger.debug(f"{kind} hypergraph slice: I={sorted(plan.I)}, q={q}")
    return plan
