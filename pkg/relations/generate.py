"""Seeded random instances: closures of random seed orbits.

Binary instances are kept when they are smooth and of pseudo-algebraic
length 1. For arity at least 3, and for a random half of the binary draws,
the seeds are first closed under all block permutations, so the closure is
symmetric (hence cyclic and 2-transitive, and smooth when binary). Seed
orbits are drawn as order types of random values, so no weak orders are
enumerated and the only bound on n * k is the generation budget on closure sizes.
"""

import os
import random
import sys
from itertools import permutations

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from config import config
from errors import BudgetExceeded, ParseError
from ops.temporal_ops import OpKind
from orbits.weak_order import WeakOrder, canonicalize, count_weak_orders
from pseudoloop.search import hypotheses
from relations.closure import closure
from relations.relation import TemporalRelation, permute_orbit

logger = get_logger(__name__)


def random_orbit(rng: random.Random, length: int) -> WeakOrder:
    """Order type of ``length`` values drawn from range(length)."""
    return canonicalize(rng.randrange(length) for _ in range(length))


def _seed_orbits(rng: random.Random, length: int, seeds: int) -> list[WeakOrder]:
    wanted = min(seeds, count_weak_orders(length))
    chosen: list[WeakOrder] = []
    while len(chosen) < wanted:
        o = random_orbit(rng, length)
        if o not in chosen:
            chosen.append(o)
    return chosen


def _symmetrized(seeds: list[WeakOrder], n: int, k: int) -> set[WeakOrder]:
    return {permute_orbit(o, p, k) for o in seeds for p in permutations(range(n))}


def random_instance(rng: random.Random, clone: OpKind, n: int, k: int, seeds: int = 2,
                    budget: int | None = None) -> TemporalRelation | None:
    """One closure of random seeds, or None when it fails the hypotheses or the budget.

    ``budget`` defaults to config.GENERATION_BUDGET.
    """
    budget = budget or config.GENERATION_BUDGET
    chosen = _seed_orbits(rng, n * k, seeds)
    # a random half of the binary draws is closed under the block swap
    symmetric = n >= 3 or rng.random() < 0.5
    orbits = _symmetrized(chosen, n, k) if symmetric else set(chosen)
    try:
        R = closure(TemporalRelation.of(n, k, orbits), clone, budget)
    except BudgetExceeded:
        logger.debug(f"Seeds {[str(o) for o in chosen]} exceed the closure budget")
        return None
    if not hypotheses(R).satisfied:
        return None
    return R


def generate_instances(clone: OpKind, n: int, k: int, count: int, seed: int | None = None,
                       seeds: int = 2, max_attempts: int | None = None,
                       budget: int | None = None) -> list[TemporalRelation]:
    """``count`` distinct instances preserved by the clone that satisfy the hypotheses.

    Raises:
        ParseError: for an arity below 2 or a dimension below 1.
        BudgetExceeded: if ``max_attempts`` draws (default 50 * count) do not yield enough instances.
    """
    if n < 2 or k < 1:
        raise ParseError(f"Instances need arity at least 2 and dimension at least 1, got n={n}, k={k}")
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    max_attempts = max_attempts or 50 * count
    found: dict[frozenset, TemporalRelation] = {}
    attempts = 0
    while len(found) < count and attempts < max_attempts:
        attempts += 1
        R = random_instance(rng, clone, n, k, seeds, budget)
        if R is not None:
            found.setdefault(R.orbits, R)
    if len(found) < count:
        logger.warning(f"Only {len(found)} of {count} instances after {max_attempts} attempts")
        raise BudgetExceeded(f"Found {len(found)} of {count} instances in {max_attempts} attempts")
    logger.info(f"Generated {count} {clone} instances of arity {n}, dim {k} in {attempts} attempts")
    return list(found.values())
