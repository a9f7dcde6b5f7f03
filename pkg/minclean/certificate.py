"""Min-clean certificates and the scans that short-circuit the constructions.

A certificate is a min-clean member of a relation together with the term
that produced it: its components, the set M of components attaining the
global minimum and the argmin set they share.
"""

import os
import sys
from dataclasses import dataclass

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import ContractViolation
from minclean.tracked import Tracked, check_contract, settle
from ops.temporal_ops import OpKind
from orbits.stats import M_set, is_loop, is_min_clean, minx
from orbits.weak_order import GroundTuple, WeakOrder, ground_of
from relations.relation import TemporalRelation
from relations.relation_io import term_to_document
from relations.structure import CertificateDocument

logger = get_logger(__name__)


@dataclass(frozen=True)
class MinCleanCertificate:
    """A min-clean member together with the term that produced it."""

    components: tuple[GroundTuple, ...]
    M: frozenset[int]
    common_minx: frozenset[int]
    kind: OpKind
    term: object = None

    @classmethod
    def from_tracked(cls, tracked: Tracked, n: int, kind: OpKind) -> "MinCleanCertificate":
        """Settle a tracked member and certify it.

        Raises:
            ContractViolation: if the member is not min-clean.
        """
        settled = settle(tracked)
        components = settled.ground().components(n)
        if not is_min_clean(components):
            raise ContractViolation(f"{kind} construction returned a tuple that is not min-clean: {settled.values}")
        M = M_set(components)
        return cls(components, M, minx(components[min(M)]), kind, settled.term)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def flat(self) -> GroundTuple:
        return GroundTuple(tuple(v for c in self.components for v in c))

    @property
    def orbit(self) -> WeakOrder:
        return self.flat.orbit

    def tracked(self) -> Tracked:
        return Tracked(self.flat.values, self.term)

    def to_document(self, basis=()) -> CertificateDocument:
        return CertificateDocument(
            kind=str(self.kind),
            components=[c.to_list() for c in self.components],
            orbit=self.orbit.to_list(),
            M=sorted(self.M),
            common_minx=sorted(self.common_minx),
            term=term_to_document(self.term, basis) if self.term is not None else None,
        )


def singleton_members(R: TemporalRelation) -> list[WeakOrder]:
    """Members whose minimum is attained in exactly one component."""
    return [o for o in R.sorted_orbits if len(M_set(ground_of(o).components(R.n))) == 1]


def find_singleton(R: TemporalRelation) -> Tracked | None:
    found = singleton_members(R)
    return Tracked.member(R, found[0]) if found else None


def find_loop(R: TemporalRelation) -> Tracked | None:
    for o in R.sorted_orbits:
        if is_loop(o.ranks, R.n):
            return Tracked.member(R, o)
    return None


def fast_path(R: TemporalRelation, kind: OpKind) -> MinCleanCertificate | None:
    """A member with |M| = 1, else a loop member; both are min-clean."""
    for tracked in (find_singleton(R), find_loop(R)):
        if tracked is not None:
            logger.debug(f"{kind}: min-clean member {tracked.orbit} found by scanning")
            return MinCleanCertificate.from_tracked(tracked, R.n, kind)
    return None


def certify(tracked: Tracked, R: TemporalRelation, kind: OpKind) -> MinCleanCertificate:
    """Certificate for a constructed member; membership is asserted under contract checks."""
    certificate = MinCleanCertificate.from_tracked(tracked, R.n, kind)
    check_contract(lambda: certificate.orbit in R.orbits,
                   f"{kind} certificate {certificate.orbit} is not a member")
    logger.info(f"{kind}: min-clean certificate {certificate.orbit}, M={sorted(certificate.M)}, "
                f"argmin={sorted(certificate.common_minx)}")
    return certificate


