import pytest

from errors import HypothesisViolation, NoFence, ParseError
from orbits.factor import (
    Step,
    algebraic_length_one,
    closed_walk_of_length_one,
    factor_digraph,
    find_fence,
    is_weakly_connected,
    linking_exponent,
    pseudo_algebraic_length_one,
    walk_algebraic_length,
)
from orbits.stats import M_set, is_loop, is_min_clean, is_pseudo_loop, kernel_pairs, minx, sim_I, split, stats
from orbits.weak_order import WeakOrder
from relations.relation import TemporalRelation

LOOP = TemporalRelation.of(2, 1, [(0, 1)])
TWO_CYCLE = TemporalRelation.of(2, 2, [(0, 1, 1, 0), (1, 0, 0, 1)])
# (0,0) -> (0,1), (0,1) -> (1,0), (0,0) -> (1,0)
TRIANGLE = TemporalRelation.of(2, 2, [(0, 0, 0, 1), (0, 1, 1, 0), (1, 1, 2, 0)])


class TestStats:
    def test_min_and_blocks(self):
        s = stats((5, 1, 3))
        assert s.min_value == 1
        assert s.minx == frozenset({1})
        assert s.I(2) == frozenset({1, 2})
        assert s.I(3) == frozenset({0, 1, 2})

    def test_tied_minimum(self):
        s = stats((0, 0, 2))
        assert s.minx == frozenset({0, 1})
        assert s.I(1) == frozenset({0, 1})

    def test_I_saturates(self):
        assert stats((0, 0, 2)).I(10) == frozenset({0, 1, 2})
        assert stats((0, 0, 2)).I(0) == frozenset()

    def test_kernel(self):
        assert stats((1, 2, 3)).off_diagonal == frozenset()
        assert kernel_pairs((4, 1, 4, 1)) == frozenset({(0, 2), (1, 3)})

    @pytest.mark.parametrize("a, b, I, expected", [
        ((0, 5, 2), (1, 9, 4), {0, 1}, True),
        ((0, 5, 2), (1, 9, 4), {0, 1, 2}, True),
        ((0, 1), (1, 0), {0, 1}, False),
        ((0, 1), (1, 0), set(), True),
        ((0, 1), (1, 0), {1}, True),
    ])
    def test_sim_I(self, a, b, I, expected):
        assert sim_I(a, b, I) is expected

    @pytest.mark.parametrize("components, expected", [
        (((0, 1), (2, 3)), {0}),
        (((0, 1), (0, 2)), {0, 1}),
        (((1, 1), (1, 1)), {0, 1}),
    ])
    def test_M_set(self, components, expected):
        assert M_set(components) == frozenset(expected)

    @pytest.mark.parametrize("components, expected", [
        (((0, 1), (0, 2)), True),
        (((0, 1), (1, 0)), False),
        (((0, 1), (2, 1)), True),
        (((0, 1), (2, 0)), False),
    ])
    def test_min_clean(self, components, expected):
        assert is_min_clean(components) is expected

    def test_split_and_loops(self):
        assert split((0, 1, 2, 3), 2) == ((0, 1), (2, 3))
        assert is_pseudo_loop((0, 1, 2, 3), 2)
        assert not is_loop((0, 1, 2, 3), 2)
        assert is_loop((0, 1, 0, 1), 2)
        assert not is_pseudo_loop((0, 1, 1, 0), 2)

    def test_minx_of_orbit(self):
        assert minx(WeakOrder((1, 0, 0))) == frozenset({1, 2})


class TestFactor:
    def test_single_orbit_is_a_loop(self):
        factor = factor_digraph(LOOP)
        assert factor.vertices == frozenset({WeakOrder((0,))})
        assert factor.edges == frozenset({(WeakOrder((0,)), WeakOrder((0,)))})
        assert factor.gcds == (1,)

    def test_parallel_labels_collapse(self):
        factor = factor_digraph(TemporalRelation.of(2, 1, [(0, 1), (1, 0)]))
        assert len(factor.edges) == 1
        assert len(factor.edge_orbits[(WeakOrder((0,)), WeakOrder((0,)))]) == 2

    def test_split_into_blocks(self):
        factor = factor_digraph(TemporalRelation.of(2, 2, [(0, 1, 1, 2)]))
        assert factor.edges == frozenset({(WeakOrder((0, 1)), WeakOrder((0, 1)))})

    def test_needs_binary(self):
        with pytest.raises(ParseError):
            factor_digraph(TemporalRelation.of(3, 1, [(0, 1, 2)]))

    def test_components(self):
        E = TemporalRelation.of(2, 2, [(0, 1, 0, 1), (1, 0, 0, 1), (0, 0, 0, 0)])
        factor = factor_digraph(E)
        assert len(factor.components) == 2
        assert not is_weakly_connected(E)
        assert is_weakly_connected(TRIANGLE)


class TestAlgebraicLength:
    def test_loop(self):
        ok, walk = pseudo_algebraic_length_one(LOOP)
        assert ok
        assert walk_algebraic_length(walk, factor_digraph(LOOP).edges) == 1

    def test_two_cycle(self):
        assert pseudo_algebraic_length_one(TWO_CYCLE) == (False, None)

    def test_forward_forward_backward(self):
        factor = factor_digraph(TRIANGLE)
        ok, walk = pseudo_algebraic_length_one(factor)
        assert ok
        assert walk[0].source == walk[-1].target
        assert walk_algebraic_length(walk, factor.edges) == 1
        assert closed_walk_of_length_one(factor, 0) == walk

    @pytest.mark.parametrize("edges, expected", [
        ([(0, 1), (1, 2), (2, 0)], False),
        ([(0, 1), (1, 0), (0, 2), (2, 1), (1, 2), (2, 0)], True),
        ([(0, 1), (1, 0), (1, 1)], True),
        ([(0, 1), (1, 0)], False),
    ])
    def test_plain_digraphs(self, edges, expected):
        assert algebraic_length_one({v for e in edges for v in e}, edges) is expected

    def test_replay_rejects_missing_edge(self):
        with pytest.raises(HypothesisViolation):
            walk_algebraic_length([Step(0, 1, True)], {(1, 0)})


class TestFences:
    def test_loop_vertex_is_linked(self):
        assert linking_exponent(factor_digraph(LOOP), 0) == 1

    def test_trivial_fence_lifts_into_relation(self):
        a = WeakOrder((0,))
        lifted = find_fence(LOOP, a, a, 1)
        assert len(lifted.fence.segments) == 1
        for column in range(len(lifted.columns)):
            assert lifted.edge(column, 0).orbit in LOOP.orbits

    def test_fence_between_two_vertices(self):
        # (0,1) -> (0,1), (0,1) -> (1,0), (1,0) -> (0,1)
        E = TemporalRelation.of(2, 2, [(0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1)])
        a, b = WeakOrder((0, 1)), WeakOrder((1, 0))
        factor = factor_digraph(E)
        assert linking_exponent(factor, 0) == 1
        lifted = find_fence(factor, a, b, 1)
        assert lifted.fence.tips[0] == a and lifted.fence.tips[-1] == b
        assert lifted.grounds[0].orbit == a
        for column in range(len(lifted.columns)):
            assert lifted.edge(column, 0).orbit in E.orbits

    def test_sink_vertex_not_linked(self, monkeypatch):
        from config import config
        monkeypatch.setattr(config, "LINK_EXPONENT_LIMIT", 4)
        with pytest.raises(NoFence):
            linking_exponent(factor_digraph(TRIANGLE), 0)

    def test_two_cycle_not_linked(self, monkeypatch):
        from config import config
        monkeypatch.setattr(config, "LINK_EXPONENT_LIMIT", 6)
        with pytest.raises(NoFence):
            linking_exponent(factor_digraph(TWO_CYCLE), 0)
