"""Replaying witness terms on the tuples of an assignment.

Terms live on orbits: every application node fixes how its two arguments
interleave, and the value it denotes is the orbit of that realization. A
replay evaluates the term on the orbits of the bound generators and checks
that all n sides of the identity land in one orbit.
"""

import os
import sys
from dataclasses import dataclass
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import ContractViolation, HypothesisViolation
from orbits.weak_order import GroundTuple, WeakOrder, ground_of
from relations.terms import Term, evaluate_orbit, generator_indices

logger = get_logger(__name__)


def eval_term(term: Term, generators: Sequence[GroundTuple]) -> GroundTuple:
    """Representative of the orbit the term yields on the given generator tuples."""
    return ground_of(evaluate_orbit(term, [g.orbit for g in generators]))


def generator_binding(basis: Sequence[WeakOrder], edge_tuples: Sequence[GroundTuple]) -> list[int]:
    """Index of the first edge tuple realizing each basis orbit.

    Raises:
        HypothesisViolation: if a basis orbit is realized by no edge.
    """
    binding = []
    for i, orbit in enumerate(basis):
        edge = next((l for l, t in enumerate(edge_tuples) if t.orbit == orbit), None)
        if edge is None:
            raise HypothesisViolation(f"Basis orbit {i} ({orbit}) is realized by no edge of the assignment")
        binding.append(edge)
    return binding


@dataclass(frozen=True)
class Replay:
    value: GroundTuple
    sides: tuple[GroundTuple, ...]

    @property
    def shared_orbit(self) -> WeakOrder:
        return self.sides[0].orbit

    @property
    def consistent(self) -> bool:
        return len({side.orbit for side in self.sides}) == 1


def replay_sides(term: Term, edge_tuples: Sequence[GroundTuple], binding: Sequence[int], n: int) -> Replay:
    """Evaluate the term with generator i bound to ``edge_tuples[binding[i]]``.

    Raises:
        ContractViolation: if the sides do not share an orbit.
    """
    used = generator_indices(term)
    generators = [edge_tuples[binding[i]] for i in range(max(used) + 1)] if used else []
    value = eval_term(term, generators)
    replay = Replay(value, value.components(n))
    if not replay.consistent:
        raise ContractViolation(f"Replayed sides {[str(s) for s in replay.sides]} do not share an orbit")
    logger.debug(f"Replay: {len(used)} generators, shared orbit {replay.shared_orbit}")
    return replay
