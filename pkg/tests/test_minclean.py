import pytest

from config import config
from errors import ContractViolation, FoundSingletonM, HypothesisViolation, ParseError, PreconditionViolation
from minclean.binary import component_minx_intersection, minclean_binary, minclean_lex, minclean_min
from minclean.certificate import fast_path, singleton_members
from minclean.chase import mi_intersect_step, mx_fencing_step, symmetric_difference_law
from minclean.hypergraph import (
    common_argmin_chain,
    loop_cyclic_min,
    min_ready_dichotomy,
    minclean_certificate,
    minclean_hyp,
    moving,
    mx_repair,
)
from minclean.tracked import Tracked, cyclic_shifts, fold
from ops.temporal_ops import LEX, LL, MI, MIN, MX
from orbits.stats import is_loop, is_min_clean
from orbits.weak_order import WeakOrder, enumerate_weak_orders
from relations.closure import closure, derivative
from relations.generate import generate_instances
from relations.relation import SymmetryGroup, TemporalRelation, invariance_group
from relations.terms import evaluate_orbit


def full(n, k):
    return TemporalRelation.of(n, k, enumerate_weak_orders(n * k))


def assert_certified(cert, R):
    assert is_min_clean(cert.components)
    assert cert.orbit in R.orbits
    assert evaluate_orbit(cert.term, R.basis) == cert.orbit


# (0,1)(1,0)(0,1) in every arrangement: all components minimal, argmins differ
SHUFFLED = TemporalRelation.of(3, 2, [(0, 1, 1, 0, 0, 1), (1, 0, 0, 1, 0, 1), (0, 1, 0, 1, 1, 0)])


class TestChaseSteps:
    def test_single_member(self):
        assert mi_intersect_step([Tracked((0, 1, 0, 2))], 0, 1) == frozenset({0})

    def test_argmins_meet(self):
        assert mi_intersect_step([Tracked((0, 1, 0, 1)), Tracked((0, 2, 0, 1))], 0, 1) == frozenset({0})

    def test_disjoint_argmins_give_singleton(self):
        with pytest.raises(FoundSingletonM) as info:
            mi_intersect_step([Tracked((0, 1, 1, 0)), Tracked((0, 1, 0, 1))], 0, 1)
        assert info.value.witness.orbit == WeakOrder((0, 3, 2, 1))

    def test_members_must_share_minimum(self):
        with pytest.raises(PreconditionViolation):
            mi_intersect_step([Tracked((0, 1, 0, 1)), Tracked((1, 2, 1, 2))], 0, 1)

    def test_mx_equal_argmins(self):
        assert mx_fencing_step(Tracked((0, 1, 0, 1)), Tracked((0, 1, 0, 2)), 0, 1) == frozenset({0})

    def test_mx_differing_argmins(self):
        with pytest.raises(FoundSingletonM):
            mx_fencing_step(Tracked((0, 1, 0, 1)), Tracked((0, 1, 1, 0)), 0, 1)

    def test_mx_needs_equal_argmin_at_i(self):
        with pytest.raises(PreconditionViolation):
            mx_fencing_step(Tracked((0, 1, 0, 1)), Tracked((1, 0, 0, 1)), 0, 1)

    @pytest.mark.parametrize("a, b", [((0, 1, 0), (0, 0, 1)), ((0, 2, 1), (0, 1, 0)), ((1, 0), (1, 0))])
    def test_symmetric_difference_law(self, a, b):
        assert symmetric_difference_law(a, b)


class TestBinary:
    @pytest.mark.parametrize("kind", [MIN, MI, MX])
    def test_full_relation(self, kind):
        E = full(2, 2)
        assert_certified(minclean_binary(E, kind), E)

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", [MIN, MI, MX])
    def test_generated_instances(self, kind):
        for E in generate_instances(kind, 2, 2, count=3, seed=3):
            assert_certified(minclean_binary(E, kind), E)

    def test_singleton_scan(self):
        E = TemporalRelation.of(2, 1, [(0, 0), (0, 1)])
        assert singleton_members(E) == [WeakOrder((0, 1))]
        assert fast_path(E, MIN).M == frozenset({0})

    def test_loop_when_no_singleton(self):
        E = TemporalRelation.of(2, 2, [(0, 1, 0, 1), (0, 1, 0, 2)])
        cert = fast_path(E, MI)
        assert cert.orbit == WeakOrder((0, 1, 0, 1))

    def test_component_argmin(self):
        E = TemporalRelation.of(2, 2, [(0, 1, 0, 1), (0, 1, 0, 2)])
        assert component_minx_intersection(E, 0, MI) == frozenset({0})
        assert component_minx_intersection(E, 0, LEX) == frozenset({0})

    def test_component_chase_needs_mi_or_lex(self):
        E = TemporalRelation.of(2, 2, [(0, 1, 0, 1)])
        with pytest.raises(ParseError):
            component_minx_intersection(E, 0, MIN)

    def test_not_smooth(self):
        with pytest.raises(HypothesisViolation):
            minclean_min(TemporalRelation.of(2, 2, [(0, 1, 1, 0)]))

    def test_no_construction_for_ll(self):
        with pytest.raises(ParseError):
            minclean_binary(full(2, 1), LL)

    def test_lex_certificate_lives_in_derivative(self):
        S = full(2, 1)
        Sprime = derivative(S)
        cert = minclean_lex(S, Sprime=Sprime)
        assert_certified(cert, Sprime)
        assert cert.orbit == WeakOrder((0, 1))


class TestHypergraph:
    def test_moving_prefers_fewest_moved_points(self):
        assert moving(SymmetryGroup.symmetric(3), {0: 1}) == (1, 0, 2)

    def test_moving_without_match(self):
        with pytest.raises(HypothesisViolation):
            moving(SymmetryGroup.cyclic(3), {0: 0, 1: 2})

    def test_cyclic_min_gives_loop(self):
        R = closure(TemporalRelation.of(3, 1, [(0, 1, 2), (1, 2, 0), (2, 0, 1)]), MIN)
        cert = loop_cyclic_min(R)
        assert is_loop(cert.flat.values, 3)
        assert_certified(cert, R)

    def test_min_over_shifts_needs_closure(self):
        R = TemporalRelation.of(3, 1, [(0, 1, 2), (1, 2, 0), (2, 0, 1)])
        shifts = cyclic_shifts(R, Tracked.member(R, WeakOrder((0, 1, 2))))
        assert is_loop(fold(MIN, shifts).values, 3)
        with pytest.raises(ContractViolation):
            loop_cyclic_min(R)

    def test_cyclic_min_needs_cyclic(self):
        with pytest.raises(HypothesisViolation):
            loop_cyclic_min(TemporalRelation.of(3, 1, [(0, 1, 2)]))

    def test_dichotomy_finds_singleton(self):
        result = min_ready_dichotomy(full(3, 1), MI)
        assert len(result.certificate.M) == 1
        assert not result.all_full

    def test_dichotomy_all_full(self):
        result = min_ready_dichotomy(TemporalRelation.of(3, 1, [(0, 0, 0)]), MI)
        assert result.all_full and result.certificate is None

    def test_dichotomy_reduces_partial_minimum(self, monkeypatch):
        monkeypatch.setattr(config, "CHECK_CONTRACTS", False)
        R = TemporalRelation.of(3, 1, [(0, 0, 1), (0, 1, 0), (1, 0, 0)])
        cert = min_ready_dichotomy(R, MI).certificate
        assert cert.orbit == WeakOrder((0, 1, 2))
        assert cert.M == frozenset({0})

    def test_dichotomy_in_closure(self):
        R = closure(TemporalRelation.of(3, 1, [(0, 0, 1), (0, 1, 0), (1, 0, 0)]), MI)
        assert_certified(min_ready_dichotomy(R, MI).certificate, R)

    @pytest.mark.parametrize("kind", [MI, LEX])
    def test_common_argmin_chain(self, kind):
        R = TemporalRelation.of(3, 2, [(0, 1, 0, 1, 0, 1)])
        t = Tracked.member(R, WeakOrder((0, 1, 0, 1, 0, 1)))
        assert common_argmin_chain(R, kind, invariance_group(R), t) == frozenset({0})

    def test_mx_repair(self):
        t = Tracked.member(SHUFFLED, WeakOrder((0, 1, 1, 0, 0, 1)))
        repaired = mx_repair(SHUFFLED, invariance_group(SHUFFLED), t)
        assert is_min_clean(repaired.components(3))
        assert repaired.orbit == WeakOrder((0, 0, 0, 0, 1, 2))

    def test_mx_certificate_by_repair(self, monkeypatch):
        monkeypatch.setattr(config, "CHECK_CONTRACTS", False)
        cert = minclean_hyp(SHUFFLED, MX)
        assert cert.orbit == WeakOrder((0, 0, 1, 2, 0, 0))
        assert cert.M == frozenset({0, 2})

    @pytest.mark.parametrize("kind", [MIN, MI, MX])
    def test_dispatch(self, kind):
        R = full(3, 1)
        assert_certified(minclean_certificate(R, kind), R)

    def test_lex_dispatch_uses_derivative(self):
        R = full(3, 1)
        Rprime = derivative(R)
        assert_certified(minclean_certificate(R, LEX, Rprime), Rprime)

    def test_needs_arity_three(self):
        with pytest.raises(ParseError):
            minclean_hyp(full(2, 1), MI)

    def test_not_cyclic(self):
        with pytest.raises(HypothesisViolation):
            minclean_hyp(TemporalRelation.of(3, 1, [(0, 1, 2)]), MI)
