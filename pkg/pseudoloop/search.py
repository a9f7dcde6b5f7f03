"""Top-level pseudo-loop search with constant, dual and arity dispatch."""

import os
import sys
from dataclasses import dataclass

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import HypothesisViolation, ParseError
from minclean.tracked import Tracked
from ops.temporal_ops import LL, MI, MIN, MX, Kind, OpKind
from orbits.factor import pseudo_algebraic_length_one
from orbits.weak_order import constant_orbit
from pseudoloop.induction import PseudoLoop, pseudoloop_binary, pseudoloop_hyp, pseudoloop_ll
from relations.closure import preserves
from relations.relation import TemporalRelation, invariance_group, is_cyclic, is_smooth, negate_relation

logger = get_logger(__name__)


@dataclass(frozen=True)
class Hypotheses:
    """Flags the pseudo-loop constructions need; None where a flag does not apply to the arity."""

    smooth: bool | None = None
    length_one: bool | None = None
    cyclic: bool | None = None
    two_transitive: bool | None = None

    @property
    def satisfied(self) -> bool:
        return all(flag is not False for flag in (self.smooth, self.length_one, self.cyclic, self.two_transitive))

    def failures(self) -> list[str]:
        names = {
            "smooth": self.smooth,
            "pseudo-algebraic length 1": self.length_one,
            "cyclic": self.cyclic,
            "2-transitive": self.two_transitive,
        }
        return [name for name, flag in names.items() if flag is False]

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "length_one": self.length_one,
            "cyclic": self.cyclic,
            "two_transitive": self.two_transitive,
        }


def hypotheses(R: TemporalRelation) -> Hypotheses:
    if R.n == 2:
        return Hypotheses(smooth=is_smooth(R), length_one=pseudo_algebraic_length_one(R)[0])
    if R.n >= 3:
        return Hypotheses(cyclic=is_cyclic(R), two_transitive=invariance_group(R).is_two_transitive())
    return Hypotheses()


def require_hypotheses(R: TemporalRelation):
    """Raises HypothesisViolation naming every failed flag."""
    flags = hypotheses(R)
    if not flags.satisfied:
        logger.warning(f"Hypotheses fail for arity {R.n}: {', '.join(flags.failures())}")
        raise HypothesisViolation(f"The relation is not {', '.join(flags.failures())}")


def find_pseudoloop(R: TemporalRelation, clone: OpKind, pre_closed: bool = False) -> PseudoLoop:
    """A pseudo-loop of R with its witness term over R's basis.

    Args:
        R: the relation, binary or of arity at least 3
        clone: min, mi, mx, ll, const or the dual of one of them
        pre_closed: skip the preservation check when the caller built R as a closure

    Raises:
        ParseError: for an operation outside of the supported kinds.
        HypothesisViolation: if R is not preserved or fails the structural hypotheses.
    """
    if clone.kind is Kind.CONST:
        zero = constant_orbit(R.n * R.k)
        if zero not in R.orbits:
            raise HypothesisViolation("The relation is not preserved by a constant operation")
        return PseudoLoop.from_tracked(Tracked.member(R, zero), R.n, clone)
    if clone.base not in (MIN, MI, MX, LL):
        raise ParseError(f"No pseudo-loop construction for {clone}")
    if not pre_closed and not preserves(clone, R):
        raise HypothesisViolation(f"The relation is not preserved by {clone}")
    if clone.dual:
        logger.info(f"{clone}: solving for the negated relation")
        return find_pseudoloop(negate_relation(R), clone.base, pre_closed=True).negated()

    require_hypotheses(R)
    if R.n == 1:
        return PseudoLoop.from_tracked(Tracked.member(R, R.sorted_orbits[0]), 1, clone)
    if R.n == 2:
        if clone == LL:
            return pseudoloop_ll(R)
        return pseudoloop_binary(R, clone)
    return pseudoloop_hyp(R, clone)
