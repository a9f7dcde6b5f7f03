"""Verifying a pseudo-loop condition on every assignment of a structure.

An assignment maps each vertex of the structure to a k-tuple of rationals;
up to automorphisms of Q the assignments are the weak orders of length
|V| * k. Each assignment induces an indicator relation (the orbits of its
edge tuples). The closure of the indicator under the clone is searched for a
pseudo-loop, whose witness term is then replayed on the assignment's edges.
Assignments with the same indicator share one search.
"""

import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed

from tqdm import tqdm

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from config import config
from errors import ContractViolation, HypothesisViolation, TemporalError
from loopcond.replay import generator_binding, replay_sides
from loopcond.structures import ConditionStructure, condition_identities, hypothesis_report
from ops.temporal_ops import OpKind
from orbits.weak_order import GroundTuple, WeakOrder, count_weak_orders, enumerate_weak_orders, ground_of, join
from pseudoloop.induction import PseudoLoop
from pseudoloop.search import find_pseudoloop
from relations.closure import closure
from relations.relation import TemporalRelation
from relations.relation_io import term_to_document
from relations.structure import AssignmentOutcome, ConditionReportDocument

logger = get_logger(__name__)


def vertex_tuples(s: ConditionStructure, assignment: WeakOrder, k: int) -> list[GroundTuple]:
    values = ground_of(assignment).values
    return [GroundTuple(values[v * k:(v + 1) * k]) for v in range(len(s.vertices))]


def edge_tuples(s: ConditionStructure, assignment: WeakOrder, k: int) -> list[GroundTuple]:
    """One n*k tuple per edge, in enumeration order."""
    tuples = vertex_tuples(s, assignment, k)
    return [join([tuples[v] for v in edge]) for edge in s.edges]


def indicator(s: ConditionStructure, assignment: WeakOrder, k: int) -> TemporalRelation:
    """The relation whose orbits are those of the assignment's edge tuples."""
    return TemporalRelation.of(s.arity, k, (t.orbit for t in edge_tuples(s, assignment, k)))


class ConditionVerifier:
    def __init__(self, structure: ConditionStructure, clone: OpKind, k: int,
                 max_workers: int | None = None, timings: bool = False, budget: int | None = None):
        self.structure = structure
        self.clone = clone
        self.k = k
        self.max_workers = max_workers or config.MAX_WORKERS
        self.timings = timings
        self.budget = budget

    def assignments(self) -> tuple[WeakOrder, ...]:
        width = len(self.structure.vertices) * self.k
        logger.info(f"{self.structure.name}: {count_weak_orders(width)} assignments of k={self.k}")
        return enumerate_weak_orders(width)

    def _solve(self, R: TemporalRelation) -> tuple[PseudoLoop, float]:
        started = time.perf_counter()
        closed = closure(R, self.clone, self.budget)
        loop = find_pseudoloop(closed, self.clone, pre_closed=True)
        if loop.term is None:
            raise ContractViolation(f"The pseudo-loop {loop.orbit} carries no witness term")
        return loop, time.perf_counter() - started

    def verify(self) -> ConditionReportDocument:
        """Search and replay on every assignment.

        Raises:
            HypothesisViolation: if the structure fails the hypotheses for its arity.
        """
        s = self.structure
        flags = hypothesis_report(s)
        if not flags.satisfied:
            logger.warning(f"{s.name} is not {', '.join(flags.failures())}")
            raise HypothesisViolation(f"Structure {s.name} is not {', '.join(flags.failures())}")

        assignments = self.assignments()
        classes: dict[frozenset, TemporalRelation] = {}
        class_of = []
        for a in assignments:
            R = indicator(s, a, self.k)
            classes.setdefault(R.orbits, R)
            class_of.append(R.orbits)
        keys = list(classes)
        position = {key: idx for idx, key in enumerate(keys)}
        logger.info(f"{s.name}: {len(keys)} distinct indicators under {self.clone} on {self.max_workers} workers")

        solved: list = [None] * len(keys)
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_idx = {executor.submit(self._solve, classes[key]): idx for idx, key in enumerate(keys)}
            for future in tqdm(as_completed(future_to_idx), total=len(keys), desc="Solving indicators"):
                idx = future_to_idx[future]
                try:
                    solved[idx] = future.result()
                except TemporalError as e:
                    logger.error(f"Indicator {idx} failed: {e}")
                    solved[idx] = e

        witness_of = {}
        witnesses = []
        for idx, key in enumerate(keys):
            if isinstance(solved[idx], tuple):
                witness_of[key] = len(witnesses)
                witnesses.append(term_to_document(solved[idx][0].term, classes[key].basis))

        outcomes = [self._outcome(i, a, classes[class_of[i]], solved[position[class_of[i]]],
                                  witness_of.get(class_of[i]))
                    for i, a in enumerate(assignments)]
        verified = sum(o.success for o in outcomes)
        logger.info(f"{s.name}: {verified}/{len(outcomes)} assignments verified")
        return ConditionReportDocument(
            structure=s.name,
            identities=[condition_identities(s), condition_identities(s, pseudo=True)],
            clone=str(self.clone),
            k=self.k,
            hypotheses=flags.to_dict(),
            assignments=len(outcomes),
            verified=verified,
            success=verified == len(outcomes),
            witnesses=witnesses,
            outcomes=outcomes,
        )

    def _outcome(self, index: int, assignment: WeakOrder, R: TemporalRelation, solved,
                 witness: int | None) -> AssignmentOutcome:
        base = dict(index=index, assignment=assignment.to_list())
        if isinstance(solved, TemporalError):
            return AssignmentOutcome(**base, success=False, diagnostic=f"{type(solved).__name__}: {solved}")
        loop, seconds = solved
        tuples = edge_tuples(self.structure, assignment, self.k)
        try:
            replay = replay_sides(loop.term, tuples, generator_binding(R.basis, tuples), self.structure.arity)
        except TemporalError as e:
            logger.error(f"Replay failed on assignment {index}: {e}")
            return AssignmentOutcome(**base, success=False, diagnostic=f"{type(e).__name__}: {e}")
        return AssignmentOutcome(**base, success=True, shared_orbit=replay.shared_orbit.to_list(),
                                 witness=witness, seconds=round(seconds, 6) if self.timings else None)


def verify_condition(structure: ConditionStructure, clone: OpKind, k: int,
                     max_workers: int | None = None, timings: bool = False,
                     budget: int | None = None) -> ConditionReportDocument:
    return ConditionVerifier(structure, clone, k, max_workers, timings, budget).verify()
