"""Temporal relations as finite sets of orbits.

An n-ary relation on Q^k that is first-order definable over (Q;<) is a union
of orbits of n*k-tuples, so it is stored as a set of weak orders of length
n*k. Component i of a member occupies positions i*k .. i*k+k-1.

``basis`` fixes what generator i of a witness term stands for; ``terms`` maps
derived orbits to the term that produced them. Both survive restriction so
that terms built on a restricted relation still refer to the original basis.
"""

import os
import sys
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import ParseError
from orbits.stats import is_loop, is_min_clean, is_pseudo_loop, kernel_pairs
from orbits.weak_order import WeakOrder, canonicalize, ground_of
from relations.terms import Generator, Term, dualize_term

logger = get_logger(__name__)

Permutation = tuple[int, ...]


def _as_orbit(value) -> WeakOrder:
    if isinstance(value, WeakOrder):
        return value
    return WeakOrder.from_list(list(value))


@dataclass(frozen=True)
class TemporalRelation:
    n: int
    k: int
    orbits: frozenset[WeakOrder]
    names: tuple[str, ...] | None = field(default=None, compare=False)
    basis: tuple[WeakOrder, ...] = field(default=(), compare=False)
    terms: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "orbits", frozenset(_as_orbit(o) for o in self.orbits))
        if self.n < 1 or self.k < 1:
            raise ParseError(f"Arity and dimension must be positive, got n={self.n}, k={self.k}")
        if not self.orbits:
            raise ParseError("A relation needs at least one orbit")
        width = self.n * self.k
        for orbit in self.orbits:
            if len(orbit) != width:
                raise ParseError(f"Orbit {orbit} has length {len(orbit)}, expected n*k = {width}")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(sorted(self.orbits)))
        else:
            object.__setattr__(self, "basis", tuple(_as_orbit(o) for o in self.basis))
            if any(len(o) != width for o in self.basis):
                raise ParseError("Basis orbits must have length n*k")
        if self.names is not None and len(self.names) != self.n:
            raise ParseError(f"Expected {self.n} component names, got {len(self.names)}")

    @classmethod
    def of(cls, n: int, k: int, orbits: Iterable, names: Sequence[str] | None = None) -> "TemporalRelation":
        return cls(n=n, k=k, orbits=frozenset(_as_orbit(o) for o in orbits),
                   names=tuple(names) if names is not None else None)

    def derive(self, orbits: Iterable[WeakOrder], terms: dict | None = None) -> "TemporalRelation":
        """Same shape and basis, other orbits; terms of surviving orbits are kept."""
        orbits = frozenset(orbits)
        merged = {o: t for o, t in self.terms.items() if o in orbits}
        if terms:
            merged.update({o: t for o, t in terms.items() if o in orbits})
        return TemporalRelation(self.n, self.k, orbits, self.names, self.basis, merged)

    @cached_property
    def sorted_orbits(self) -> tuple[WeakOrder, ...]:
        return tuple(sorted(self.orbits))

    def __contains__(self, orbit) -> bool:
        return _as_orbit(orbit) in self.orbits

    def __len__(self) -> int:
        return len(self.orbits)

    def term_of(self, orbit: WeakOrder) -> Term:
        """Witness term of an orbit in terms of the basis generators."""
        if orbit in self.terms:
            return self.terms[orbit]
        if orbit in self.basis:
            return Generator(self.basis.index(orbit))
        raise ParseError(f"Orbit {orbit} has neither a witness term nor a generator")

    def components(self, orbit: WeakOrder) -> tuple[WeakOrder, ...]:
        return orbit.blocks(self.n)

    def project(self, blocks: Sequence[int]) -> "TemporalRelation":
        """Projection to some of the n components, in the given order."""
        blocks = list(blocks)
        if not blocks or any(not 0 <= b < self.n for b in blocks):
            raise ParseError(f"Invalid component selection {blocks} for arity {self.n}")
        positions = [b * self.k + c for b in blocks for c in range(self.k)]
        names = tuple(self.names[b] for b in blocks) if self.names else None
        return TemporalRelation.of(len(blocks), self.k, {o.restrict(positions) for o in self.orbits}, names)

    def coordinate_positions(self, coords: Sequence[int]) -> list[int]:
        return [i * self.k + c for i in range(self.n) for c in coords]

    def project_coordinates(self, coords: Sequence[int]) -> "TemporalRelation":
        """Restrict every component to the coordinates ``coords`` (a relation on Q^len(coords))."""
        coords = list(coords)
        if not coords or any(not 0 <= c < self.k for c in coords):
            raise ParseError(f"Invalid coordinate selection {coords} for dimension {self.k}")
        positions = self.coordinate_positions(coords)
        return TemporalRelation.of(self.n, len(coords), {o.restrict(positions) for o in self.orbits}, self.names)

    def restrict_component(self, component: Iterable[WeakOrder]) -> "TemporalRelation":
        """E|W x W: the edges with both endpoints in W.

        Raises:
            ParseError: if the relation is not binary or no edge remains.
        """
        if self.n != 2:
            raise ParseError(f"Component restriction needs a binary relation, got arity {self.n}")
        component = frozenset(component)
        kept = [o for o in self.orbits if o.block(0, self.k) in component and o.block(1, self.k) in component]
        if not kept:
            raise ParseError("Restriction to the component is empty")
        return self.derive(kept)

    def permute_blocks(self, perm: Permutation) -> "TemporalRelation":
        return TemporalRelation.of(self.n, self.k, {permute_orbit(o, perm, self.k) for o in self.orbits}, self.names)

    def to_dict(self) -> dict:
        data = {"arity": self.n, "dim": self.k, "orbits": [o.to_list() for o in self.sorted_orbits]}
        if self.names is not None:
            data["names"] = list(self.names)
        return data


def permute_orbit(orbit: WeakOrder, perm: Permutation, k: int) -> WeakOrder:
    """(pi . t)_j = t_{pi(j)} on component blocks."""
    return orbit.restrict([perm[j] * k + c for j in range(len(perm)) for c in range(k)])


def negate_relation(R: TemporalRelation) -> TemporalRelation:
    """-R: every orbit order-reversed; witness terms are dualized."""
    terms = {o.reversed_order(): dualize_term(t) for o, t in R.terms.items()}
    return TemporalRelation(
        n=R.n, k=R.k,
        orbits=frozenset(o.reversed_order() for o in R.orbits),
        names=R.names,
        basis=tuple(o.reversed_order() for o in R.basis),
        terms=terms,
    )


def kernel(orbit: WeakOrder) -> frozenset[tuple[int, int]]:
    return kernel_pairs(orbit.ranks)


@dataclass(frozen=True)
class SymmetryGroup:
    """Permutation group on component indices 0..degree-1, given by generators."""

    degree: int
    generators: tuple[Permutation, ...]

    def __post_init__(self):
        for g in self.generators:
            if sorted(g) != list(range(self.degree)):
                raise ParseError(f"{g} is not a permutation of {self.degree} points")

    @classmethod
    def cyclic(cls, degree: int) -> "SymmetryGroup":
        shift = tuple((i + 1) % degree for i in range(degree))
        return cls(degree, (shift,) if degree > 1 else ())

    @classmethod
    def symmetric(cls, degree: int) -> "SymmetryGroup":
        if degree < 2:
            return cls(degree, ())
        shift = tuple((i + 1) % degree for i in range(degree))
        swap = (1, 0) + tuple(range(2, degree))
        return cls(degree, (shift, swap))

    @cached_property
    def elements(self) -> frozenset[Permutation]:
        identity = tuple(range(self.degree))
        found = {identity}
        frontier = [identity]
        while frontier:
            current = frontier.pop()
            for g in self.generators:
                product = tuple(g[current[i]] for i in range(self.degree))
                if product not in found:
                    found.add(product)
                    frontier.append(product)
        return frozenset(found)

    def is_two_transitive(self) -> bool:
        """Every ordered pair of distinct points maps to every other such pair."""
        if self.degree < 2:
            return True
        pairs = {(i, j) for i in range(self.degree) for j in range(self.degree) if i != j}
        images = {(g[0], g[1]) for g in self.elements}
        return images == pairs


def is_invariant(R: TemporalRelation, group: SymmetryGroup) -> bool:
    if group.degree != R.n:
        raise ParseError(f"Group of degree {group.degree} does not act on arity {R.n}")
    return all(permute_orbit(o, g, R.k) in R.orbits for g in group.generators for o in R.orbits)


def invariance_group(R: TemporalRelation) -> SymmetryGroup:
    """All component permutations leaving R invariant."""
    elements = tuple(p for p in permutations(range(R.n))
                     if all(permute_orbit(o, p, R.k) in R.orbits for o in R.orbits))
    return SymmetryGroup(R.n, elements)


def is_smooth(E: TemporalRelation) -> bool:
    """Both component projections have the same orbits.

    Raises:
        ParseError: if E is not binary.
    """
    if E.n != 2:
        raise ParseError(f"Smoothness is defined for binary relations, got arity {E.n}")
    first = {o.block(0, E.k) for o in E.orbits}
    second = {o.block(1, E.k) for o in E.orbits}
    return first == second


def is_cyclic(R: TemporalRelation) -> bool:
    return is_invariant(R, SymmetryGroup.cyclic(R.n))


def is_symmetric(R: TemporalRelation) -> bool:
    return is_invariant(R, SymmetryGroup.symmetric(R.n))


def is_two_transitive(R: TemporalRelation) -> bool:
    return invariance_group(R).is_two_transitive()


@dataclass(frozen=True)
class RelationChecks:
    smooth: bool | None
    cyclic: bool
    symmetric: bool
    two_transitive: bool
    invariant_under: bool | None = None

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "cyclic": self.cyclic,
            "symmetric": self.symmetric,
            "two_transitive": self.two_transitive,
            "invariant_under": self.invariant_under,
        }


def checks(R: TemporalRelation, group: SymmetryGroup | None = None) -> RelationChecks:
    """Structural flags; ``smooth`` is None for non-binary relations."""
    return RelationChecks(
        smooth=is_smooth(R) if R.n == 2 else None,
        cyclic=is_cyclic(R),
        symmetric=is_symmetric(R),
        two_transitive=is_two_transitive(R),
        invariant_under=is_invariant(R, group) if group is not None else None,
    )


def pseudo_loop_orbits(R: TemporalRelation) -> list[WeakOrder]:
    """Exhaustive scan for orbits whose components share one orbit."""
    return [o for o in R.sorted_orbits if is_pseudo_loop(o.ranks, R.n)]


def loop_orbits(R: TemporalRelation) -> list[WeakOrder]:
    return [o for o in R.sorted_orbits if is_loop(o.ranks, R.n)]


def min_clean_orbits(R: TemporalRelation) -> list[WeakOrder]:
    return [o for o in R.sorted_orbits if is_min_clean(ground_of(o).components(R.n))]


def orbit_of_components(components) -> WeakOrder:
    values = []
    for c in components:
        values.extend(c)
    return canonicalize(values)
