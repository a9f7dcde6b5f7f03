from fractions import Fraction

import pytest

from errors import BudgetExceeded, InconsistentAlignment, ParseError
from orbits.weak_order import (
    GroundTuple,
    WeakOrder,
    canonicalize,
    count_weak_orders,
    enumerate_weak_orders,
    exact,
    extend_ground,
    ground_of,
    join,
)


class TestCanonicalize:
    @pytest.mark.parametrize("values, ranks", [
        ((5, 2, 5), (1, 0, 1)),
        ((3,), (0,)),
        ((Fraction(1, 2), 0, 7), (1, 0, 2)),
        ((4, 4, 4), (0, 0, 0)),
    ])
    def test_ranks(self, values, ranks):
        assert canonicalize(values) == WeakOrder(ranks)

    def test_empty_tuple(self):
        with pytest.raises(ParseError):
            canonicalize(())

    def test_orbit_of_ground_tuple(self):
        assert GroundTuple.of(10, -3, 10).orbit == WeakOrder((1, 0, 1))

    def test_shifted_tuple_same_orbit(self):
        t = (3, 1, 4, 1, 5)
        assert canonicalize(t) == canonicalize(tuple(2 * v + 7 for v in t))


class TestWeakOrder:
    def test_not_surjective(self):
        with pytest.raises(ParseError):
            WeakOrder((0, 2))

    def test_negative_rank(self):
        with pytest.raises(ParseError):
            WeakOrder((-1, 0))

    def test_blocks(self):
        assert WeakOrder((0, 1, 1, 0)).blocks(2) == (WeakOrder((0, 1)), WeakOrder((1, 0)))

    def test_blocks_not_divisible(self):
        with pytest.raises(ParseError):
            WeakOrder((0, 1, 2)).blocks(2)

    def test_restrict_recanonicalizes(self):
        assert WeakOrder((2, 0, 1)).restrict([0, 2]) == WeakOrder((1, 0))

    def test_reversed(self):
        assert WeakOrder((0, 1, 2, 1)).reversed_order() == WeakOrder((2, 1, 0, 1))

    def test_height(self):
        assert WeakOrder((0, 2, 1, 2)).height == 3


class TestEnumeration:
    @pytest.mark.parametrize("k, count", [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541)])
    def test_fubini_numbers(self, k, count):
        assert count_weak_orders(k) == count
        assert len(enumerate_weak_orders(k)) == count

    def test_length_two_listing(self):
        assert enumerate_weak_orders(2) == (WeakOrder((0, 0)), WeakOrder((0, 1)), WeakOrder((1, 0)))

    def test_sorted_and_distinct(self):
        orders = enumerate_weak_orders(4)
        assert list(orders) == sorted(set(orders))

    def test_zero_length(self):
        with pytest.raises(ParseError):
            enumerate_weak_orders(0)

    def test_bound(self):
        from config import config
        with pytest.raises(BudgetExceeded):
            enumerate_weak_orders(config.MAX_ENUM_ARITY + 1)


class TestGround:
    def test_ground_of_is_ranks(self):
        assert ground_of(WeakOrder((1, 0, 1))).values == (1, 0, 1)

    @pytest.mark.parametrize("value, expected", [("1/2", Fraction(1, 2)), ("3", 3), (0.5, Fraction(1, 2)), (7, 7)])
    def test_exact(self, value, expected):
        assert exact(value) == expected

    @pytest.mark.parametrize("value", [True, "abc", None])
    def test_exact_rejects(self, value):
        with pytest.raises(ParseError):
            exact(value)

    def test_components_and_join(self):
        t = GroundTuple.of(0, 1, 2, 3)
        parts = t.components(2)
        assert parts == (GroundTuple.of(0, 1), GroundTuple.of(2, 3))
        assert join(parts) == t

    def test_negated(self):
        assert GroundTuple.of(1, -2).negated() == GroundTuple.of(-1, 2)


class TestExtendGround:
    def test_fills_between_fixed_values(self):
        g = extend_ground(WeakOrder((0, 1, 2)), {0: 0, 2: 1})
        assert g.values == (0, Fraction(1, 2), 1)

    def test_steps_outside_fixed_range(self):
        g = extend_ground(WeakOrder((0, 1, 2)), {1: 10})
        assert g.values == (9, 10, 11)

    def test_realizes_joint(self):
        joint = WeakOrder((2, 0, 3, 1, 0))
        g = extend_ground(joint, {0: 5, 3: 1})
        assert g.orbit == joint
        assert g[0] == 5 and g[3] == 1

    def test_no_fixed_positions(self):
        assert extend_ground(WeakOrder((1, 0)), {}) == GroundTuple.of(1, 0)

    def test_contradicting_values(self):
        with pytest.raises(InconsistentAlignment):
            extend_ground(WeakOrder((0, 1)), {0: 3, 1: 2})

    def test_equal_rank_different_values(self):
        with pytest.raises(InconsistentAlignment):
            extend_ground(WeakOrder((0, 0)), {0: 1, 1: 2})
