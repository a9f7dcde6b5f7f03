"""Factor digraphs of binary temporal relations.

A binary relation E on Q^k has finitely many orbits. Its factor is the digraph
whose vertices are the k-orbits occurring in E and whose edges are the pairs
(A, B) such that some orbit of E projects to A and B. Closed walks in the
factor, their algebraic length (forward minus backward steps), components,
fences and the linking exponent are all computed here.

Walks are lifted back to rational tuples over the dense order: every step
picks an orbit of E over the factor edge and realizes it while keeping the
values already chosen for the shared endpoint.
"""

import os
import sys
from dataclasses import dataclass, field
from math import gcd
from typing import Hashable, Iterable, NamedTuple, Sequence

import networkx as nx

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from config import config
from errors import HypothesisViolation, NoFence, ParseError
from orbits.weak_order import GroundTuple, WeakOrder, extend_ground, ground_of, join

logger = get_logger(__name__)


class Step(NamedTuple):
    """One traversal of a factor edge; ``forward`` means (source, target) is the edge."""

    source: Hashable
    target: Hashable
    forward: bool

    def inverted(self) -> "Step":
        return Step(self.target, self.source, not self.forward)


def _bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of ``values`` with integer coefficients realizing it."""
    g, coefficients = 0, []
    for value in values:
        # extended Euclid on (g, value)
        old_r, r = g, value
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            quotient = old_r // r
            old_r, r = r, old_r - quotient * r
            old_s, s = s, old_s - quotient * s
            old_t, t = t, old_t - quotient * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coefficients = [c * old_s for c in coefficients] + [old_t]
        g = old_r
    return g, coefficients


def potentials(graph: nx.DiGraph, component: Iterable[Hashable]) -> tuple[dict, dict]:
    """BFS potential labeling of one weak component and the BFS parent steps."""
    root = min(component)
    potential = {root: 0}
    parent: dict = {}
    undirected = graph.to_undirected(as_view=True)
    for u, w in nx.bfs_edges(undirected, root, sort_neighbors=sorted):
        if graph.has_edge(u, w):
            potential[w] = potential[u] + 1
            parent[w] = Step(u, w, True)
        else:
            potential[w] = potential[u] - 1
            parent[w] = Step(u, w, False)
    return potential, parent


def component_gcd(graph: nx.DiGraph, component: Iterable[Hashable]) -> int:
    """gcd of the edge discrepancies; 0 when every discrepancy vanishes."""
    component = set(component)
    potential, _ = potentials(graph, component)
    g = 0
    for a, b in graph.subgraph(component).edges():
        g = gcd(g, potential[a] + 1 - potential[b])
    return g


def algebraic_length_one(nodes: Iterable[Hashable], edges: Iterable[tuple]) -> bool:
    """Whether a finite digraph has a closed walk of algebraic length 1."""
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(edges)
    return any(component_gcd(graph, c) == 1 for c in nx.weakly_connected_components(graph))


def walk_algebraic_length(walk: Sequence[Step], edges) -> int:
    """Replay a walk against an edge set and return its algebraic length.

    Raises:
        HypothesisViolation: if a step is not an edge or steps do not chain.
    """
    total = 0
    for index, step in enumerate(walk):
        edge = (step.source, step.target) if step.forward else (step.target, step.source)
        if edge not in edges:
            raise HypothesisViolation(f"Step {index} uses a missing edge {edge}")
        if index and walk[index - 1].target != step.source:
            raise HypothesisViolation(f"Step {index} does not continue the walk")
        total += 1 if step.forward else -1
    return total


@dataclass(frozen=True)
class FactorDigraph:
    """The ~k-factor of a binary relation together with its component data."""

    k: int
    vertices: frozenset[WeakOrder]
    edges: frozenset[tuple[WeakOrder, WeakOrder]]
    components: tuple[frozenset[WeakOrder], ...]
    gcds: tuple[int, ...]
    edge_orbits: dict = field(compare=False, hash=False, repr=False)
    graph: nx.DiGraph = field(compare=False, hash=False, repr=False)

    @classmethod
    def build(cls, orbits: Iterable[WeakOrder], k: int) -> "FactorDigraph":
        edge_orbits: dict[tuple[WeakOrder, WeakOrder], list[WeakOrder]] = {}
        for orbit in sorted(orbits):
            a, b = orbit.block(0, k), orbit.block(1, k)
            edge_orbits.setdefault((a, b), []).append(orbit)
        graph = nx.DiGraph()
        for a, b in sorted(edge_orbits):
            graph.add_edge(a, b)
        components = tuple(sorted((frozenset(c) for c in nx.weakly_connected_components(graph)), key=min))
        gcds = tuple(component_gcd(graph, c) for c in components)
        return cls(
            k=k,
            vertices=frozenset(graph.nodes),
            edges=frozenset(edge_orbits),
            components=components,
            gcds=gcds,
            edge_orbits={e: tuple(v) for e, v in edge_orbits.items()},
            graph=graph,
        )

    def component_index(self, vertex: WeakOrder) -> int:
        for index, component in enumerate(self.components):
            if vertex in component:
                return index
        raise ParseError(f"{vertex} is not a vertex of the factor")

    def component_labels(self) -> dict[WeakOrder, int]:
        return {v: i for i, c in enumerate(self.components) for v in c}

    def length_one_components(self) -> list[int]:
        """Indices of components admitting a closed walk of algebraic length 1."""
        return [i for i, g in enumerate(self.gcds) if g == 1]

    def successors(self, vertex: WeakOrder) -> list[WeakOrder]:
        return sorted(self.graph.successors(vertex))

    def predecessors(self, vertex: WeakOrder) -> list[WeakOrder]:
        return sorted(self.graph.predecessors(vertex))


def factor_digraph(E) -> FactorDigraph:
    """Factor of a binary relation (anything with ``n``, ``k`` and ``orbits``)."""
    if E.n != 2:
        raise ParseError(f"The factor digraph needs a binary relation, got arity {E.n}")
    return FactorDigraph.build(E.orbits, E.k)


def _tree_path(parent: dict, vertex) -> list[Step]:
    path = []
    while vertex in parent:
        step = parent[vertex]
        path.append(step)
        vertex = step.source
    return list(reversed(path))


def closed_walk_of_length_one(factor: FactorDigraph, index: int) -> list[Step] | None:
    """A closed walk of algebraic length 1 inside one component, or None.

    Every edge with non-zero discrepancy yields a closed walk through the BFS
    root whose algebraic length is that discrepancy; Bezout coefficients
    combine them into length 1.
    """
    if factor.gcds[index] != 1:
        return None
    component = factor.components[index]
    potential, parent = potentials(factor.graph, component)
    cycles, discrepancies = [], []
    for a, b in sorted(factor.graph.subgraph(component).edges()):
        d = potential[a] + 1 - potential[b]
        if d:
            back = [s.inverted() for s in reversed(_tree_path(parent, b))]
            cycles.append(_tree_path(parent, a) + [Step(a, b, True)] + back)
            discrepancies.append(d)
    g, coefficients = _bezout(discrepancies)
    walk: list[Step] = []
    for cycle, c in zip(cycles, coefficients):
        piece = cycle if c > 0 else [s.inverted() for s in reversed(cycle)]
        walk.extend(piece * abs(c))
    return walk


def pseudo_algebraic_length_one(E) -> tuple[bool, list[Step] | None]:
    """Whether the factor of E has a closed walk of algebraic length 1, with a witness."""
    factor = E if isinstance(E, FactorDigraph) else factor_digraph(E)
    for index in factor.length_one_components():
        return True, closed_walk_of_length_one(factor, index)
    return False, None


def is_weakly_connected(E) -> bool:
    factor = E if isinstance(E, FactorDigraph) else factor_digraph(E)
    return len(factor.components) == 1


def _layers(factor: FactorDigraph, start: WeakOrder, m: int) -> list[dict]:
    """Forward BFS layers from ``start``: layer h maps reached vertex to its predecessor."""
    layers = [{start: None}]
    for _ in range(m):
        nxt: dict = {}
        for v in sorted(layers[-1]):
            for w in factor.successors(v):
                nxt.setdefault(w, v)
        layers.append(nxt)
    return layers


def _path_to(layers: list[dict], top: WeakOrder) -> tuple[WeakOrder, ...]:
    path = [top]
    for h in range(len(layers) - 1, 0, -1):
        path.append(layers[h][path[-1]])
    return tuple(reversed(path))


def _reach(factor: FactorDigraph, vertices: Iterable[WeakOrder], m: int) -> dict:
    return {v: _layers(factor, v, m) for v in vertices}


@dataclass(frozen=True)
class Fence:
    """An m-fence on the factor: up-down segments between consecutive lower tips.

    Each segment is a pair of vertex paths of length m: ``up`` runs from the
    segment's first tip to the top, ``down`` from the next tip to the same top.
    """

    m: int
    segments: tuple[tuple[tuple[WeakOrder, ...], tuple[WeakOrder, ...]], ...]

    @property
    def tips(self) -> tuple[WeakOrder, ...]:
        return (self.segments[0][0][0],) + tuple(down[0] for _, down in self.segments)

    def steps(self) -> list[Step]:
        walk = []
        for up, down in self.segments:
            walk.extend(Step(up[h], up[h + 1], True) for h in range(self.m))
            walk.extend(Step(down[h + 1], down[h], False) for h in range(self.m - 1, -1, -1))
        return walk

    def __add__(self, other: "Fence") -> "Fence":
        if self.m != other.m or self.tips[-1] != other.tips[0]:
            raise HypothesisViolation("Fences do not concatenate")
        return Fence(self.m, self.segments + other.segments)


@dataclass(frozen=True)
class LiftedFence:
    """A fence realized by ground tuples.

    ``columns`` lists, per segment, the up column and then the down column;
    each column holds the ground tuples of levels 0 (tip) to m (top). Columns
    of one segment share the top tuple, consecutive segments share tips.
    """

    fence: Fence
    grounds: tuple[GroundTuple, ...]
    columns: tuple[tuple[GroundTuple, ...], ...]

    def edge(self, column: int, level: int) -> GroundTuple:
        col = self.columns[column]
        return join((col[level], col[level + 1]))


def lift_walk(factor: FactorDigraph, walk: Sequence[Step], start: GroundTuple) -> list[GroundTuple]:
    """Ground tuples visited by a walk; every step's pair lies in an orbit of the relation."""
    k = factor.k
    grounds = [start]
    for step in walk:
        current = grounds[-1]
        if step.forward:
            orbit = factor.edge_orbits[(step.source, step.target)][0]
            full = extend_ground(orbit, {p: current[p] for p in range(k)})
            grounds.append(GroundTuple(full.values[k:]))
        else:
            orbit = factor.edge_orbits[(step.target, step.source)][0]
            full = extend_ground(orbit, {k + p: current[p] for p in range(k)})
            grounds.append(GroundTuple(full.values[:k]))
    return grounds


def lift_fence(factor: FactorDigraph, fence: Fence, start: GroundTuple | None = None) -> LiftedFence:
    if start is None:
        start = ground_of(fence.tips[0])
    grounds = lift_walk(factor, fence.steps(), start)
    m = fence.m
    columns = []
    for s in range(len(fence.segments)):
        base = 2 * m * s
        columns.append(tuple(grounds[base:base + m + 1]))
        columns.append(tuple(grounds[base + 2 * m - h] for h in range(m + 1)))
    return LiftedFence(fence=fence, grounds=tuple(grounds), columns=tuple(columns))


def _route(factor: FactorDigraph, a: WeakOrder, b: WeakOrder, m: int, reach: dict) -> Fence | None:
    """BFS over lower tips; tips x, z are adjacent when an m-walk from each meets."""
    tops_of = {v: layers[m] for v, layers in reach.items()}
    feeders: dict[WeakOrder, list[WeakOrder]] = {}
    for v in sorted(tops_of):
        for top in tops_of[v]:
            feeders.setdefault(top, []).append(v)

    def segment(x, top, z):
        return (_path_to(reach[x], top), _path_to(reach[z], top))

    if a == b:
        if not tops_of.get(a):
            return None
        top = min(tops_of[a])
        return Fence(m, (segment(a, top, a),))

    came_from = {a: None}
    queue = [a]
    while queue:
        x = queue.pop(0)
        if x == b:
            break
        for top in sorted(tops_of.get(x, ())):
            for z in feeders[top]:
                if z not in came_from:
                    came_from[z] = (x, top)
                    queue.append(z)
    if b not in came_from:
        return None
    segments = []
    z = b
    while came_from[z] is not None:
        x, top = came_from[z]
        segments.append(segment(x, top, z))
        z = x
    return Fence(m, tuple(reversed(segments)))


def linking_exponent(factor: FactorDigraph, index: int) -> int:
    """Least m such that m-fences join every two vertices of the component.

    Raises:
        NoFence: if no such m exists up to config.LINK_EXPONENT_LIMIT.
    """
    component = sorted(factor.components[index])
    for m in range(1, config.LINK_EXPONENT_LIMIT + 1):
        reach = _reach(factor, component, m)
        if any(not reach[v][m] for v in component):
            continue
        fence_to_all = all(_route(factor, component[0], v, m, reach) is not None for v in component[1:])
        if fence_to_all:
            logger.debug(f"Component {index} is linked with exponent {m}")
            return m
    raise NoFence(f"Component {index} is not linked within exponent {config.LINK_EXPONENT_LIMIT}")


def find_fence(source, a: WeakOrder, b: WeakOrder, m: int, start: GroundTuple | None = None) -> LiftedFence:
    """An m-fence from a to b, lifted to ground tuples.

    Args:
        source: binary relation or its factor digraph
        a, b: vertices of one component
        m: the composition exponent
        start: optional ground tuple for the first tip (must lie in orbit a)

    Raises:
        NoFence: if no m-fence joins a and b.
    """
    factor = source if isinstance(source, FactorDigraph) else factor_digraph(source)
    if a not in factor.vertices or b not in factor.vertices:
        raise NoFence(f"{a} or {b} is not a factor vertex")
    component = factor.components[factor.component_index(a)]
    fence = _route(factor, a, b, m, _reach(factor, sorted(component), m))
    if fence is None:
        raise NoFence(f"No {m}-fence from {a} to {b}")
    return lift_fence(factor, fence, start)


def fence_through(factor: FactorDigraph, index: int, m: int | None = None) -> LiftedFence:
    """One lifted fence whose lower tips visit every vertex of a component in order."""
    component = sorted(factor.components[index])
    if m is None:
        m = linking_exponent(factor, index)
    reach = _reach(factor, component, m)
    route = [component[0]] + component[1:] if len(component) > 1 else [component[0], component[0]]
    fence = None
    for x, z in zip(route, route[1:]):
        piece = _route(factor, x, z, m, reach)
        if piece is None:
            raise NoFence(f"No {m}-fence from {x} to {z}")
        fence = piece if fence is None else fence + piece
    logger.debug(f"Fence through component {index}: {len(fence.segments)} segments, exponent {m}")
    return lift_fence(factor, fence)
