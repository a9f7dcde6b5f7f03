"""Min-clean edges in binary relations preserved by min, mi, mx or lex.

Every construction starts with the scan for an edge whose minimum sits in one
component only. When there is none, both components of every edge share the
minimum, and the canonical representatives (minimum 0) can be combined
directly by the nested operation.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import FoundSingletonM, HypothesisViolation, NoFence, ParseError
from minclean.certificate import MinCleanCertificate, certify, fast_path
from minclean.chase import chase_equality, chase_intersection, direct_intersection
from minclean.tracked import Tracked, check_contract, fold
from ops.temporal_ops import LEX, MI, MIN, MX, Kind, OpKind
from orbits.factor import FactorDigraph, factor_digraph, fence_through
from relations.closure import derivative
from relations.relation import TemporalRelation, is_smooth

logger = get_logger(__name__)


def _require_binary(E: TemporalRelation, smooth: bool = True):
    if E.n != 2:
        raise ParseError(f"Expected a binary relation, got arity {E.n}")
    if smooth and not is_smooth(E):
        raise HypothesisViolation("The relation is not smooth")


def length_one_component(E: TemporalRelation) -> tuple[FactorDigraph, int]:
    """Factor of E and the first component of pseudo-algebraic length 1.

    Raises:
        NoFence: if no component has a closed walk of algebraic length 1.
    """
    factor = factor_digraph(E)
    indices = factor.length_one_components()
    if not indices:
        raise NoFence("No factor component has algebraic length 1")
    return factor, indices[0]


def component_edges(E: TemporalRelation, factor: FactorDigraph, index: int) -> TemporalRelation:
    return E.restrict_component(factor.components[index])


def component_minx_intersection(E: TemporalRelation, index: int, kind: OpKind = MI,
                                factor: FactorDigraph | None = None) -> frozenset[int]:
    """Common argmin of all vertices of one component, chased along a fence through them.

    Raises:
        FoundSingletonM: a step produced an edge minimal in one component only.
        NoFence: the component is not linked.
    """
    if kind.kind not in (Kind.MI, Kind.LEX):
        raise ParseError(f"The component chase runs with mi or lex, not {kind}")
    factor = factor or factor_digraph(E)
    if factor.gcds[index] != 1:
        raise NoFence(f"Component {index} has no closed walk of algebraic length 1")
    fence = fence_through(factor, index)
    common = chase_intersection(E, fence, LEX if kind.kind is Kind.LEX else MI)
    direct = direct_intersection(factor.components[index])
    check_contract(lambda: common == direct, f"Chased argmin {sorted(common)} differs from {sorted(direct)}")
    logger.debug(f"Component {index}: common argmin {sorted(common)} over {len(factor.components[index])} vertices")
    return common


def _nested_over(E: TemporalRelation, kind: OpKind, orbits) -> Tracked:
    items = [Tracked.member(E, o) for o in orbits]
    return fold(kind, items) if len(items) > 1 else items[0]


def minclean_min(E: TemporalRelation) -> MinCleanCertificate:
    """Nested min over every edge of one weakly connected component."""
    _require_binary(E)
    found = fast_path(E, MIN)
    if found:
        return found
    factor = factor_digraph(E)
    edges = component_edges(E, factor, 0)
    return certify(_nested_over(E, MIN, edges.sorted_orbits), E, MIN)


def minclean_mi(E: TemporalRelation) -> MinCleanCertificate:
    """Nested mi over the edges of a length-one component once their vertices share an argmin."""
    _require_binary(E)
    found = fast_path(E, MI)
    if found:
        return found
    factor, index = length_one_component(E)
    try:
        component_minx_intersection(E, index, MI, factor)
    except FoundSingletonM as e:
        return certify(e.witness, E, MI)
    edges = component_edges(E, factor, index)
    return certify(_nested_over(E, MI, edges.sorted_orbits), E, MI)


def minclean_mx(E: TemporalRelation) -> MinCleanCertificate:
    """Every edge of a length-one component is min-clean; the least one is returned."""
    _require_binary(E, smooth=False)
    found = fast_path(E, MX)
    if found:
        return found
    factor, index = length_one_component(E)
    try:
        chase_equality(E, fence_through(factor, index))
    except FoundSingletonM as e:
        return certify(e.witness, E, MX)
    edges = component_edges(E, factor, index)
    return certify(Tracked.member(E, edges.sorted_orbits[0]), E, MX)


def minclean_lex(S: TemporalRelation, E: TemporalRelation | None = None,
                 Sprime: TemporalRelation | None = None) -> MinCleanCertificate:
    """A min-clean member of S'.

    An edge of S minimal in one component only gives one in S' after lex with
    any member of S', so scanning S' settles that case. Otherwise the vertices
    of S share an argmin and nested lex over all of S has the common kernel.
    """
    _require_binary(S)
    Sprime = Sprime or derivative(S)
    found = fast_path(Sprime, LEX)
    if found:
        return found
    factor, index = length_one_component(S)
    if len(factor.components) != 1:
        raise HypothesisViolation("The first projection of S is not weakly connected")
    try:
        component_minx_intersection(S, index, LEX, factor)
    except FoundSingletonM as e:
        lifted = fold(LEX, [e.witness, Tracked.member(Sprime, Sprime.sorted_orbits[0])])
        return certify(lifted, Sprime, LEX)
    if E is not None:
        check_contract(lambda: S.orbits <= E.orbits, "S is not contained in E")
    return certify(_nested_over(S, LEX, S.sorted_orbits), Sprime, LEX)


def minclean_binary(E: TemporalRelation, kind: OpKind) -> MinCleanCertificate:
    if kind.kind is Kind.MIN:
        return minclean_min(E)
    if kind.kind is Kind.MI:
        return minclean_mi(E)
    if kind.kind is Kind.MX:
        return minclean_mx(E)
    raise ParseError(f"No binary min-clean construction for {kind}")
