import json

import pytest

from errors import ContractViolation, HypothesisViolation, ParseError
from loopcond.replay import eval_term, generator_binding, replay_sides
from loopcond.structures import (
    condition_identities,
    condition_sides,
    hypothesis_report,
    k3,
    load_structure,
    olsak,
    preset,
    presets,
    siggers4,
    structure_from_edges,
    wnu,
)
from loopcond.verify import ConditionVerifier, edge_tuples, indicator, verify_condition
from ops.alignment import alignment_of
from ops.temporal_ops import CONST, LL, MI, MIN, MX, dual_of
from orbits.weak_order import GroundTuple, WeakOrder
from relations.relation_io import term_from_document
from relations.terms import Apply, Generator


class TestStructures:
    def test_siggers_layout(self):
        s = siggers4()
        assert s.vertices == ("a", "r", "e")
        assert s.edges == ((0, 1), (1, 0), (2, 1), (0, 2))

    def test_identities(self):
        assert condition_identities(siggers4()) == "s(a,r,e,a) ≈ s(r,a,r,e)"
        assert condition_identities(k3()) == "s(x,y,x,z,y,z) ≈ s(y,x,z,x,z,y)"

    def test_pseudo_identities(self):
        assert condition_identities(siggers4(), pseudo=True) == "u1(s(a,r,e,a)) ≈ u2(s(r,a,r,e))"

    def test_olsak_sides(self):
        assert condition_sides(olsak()) == ["s(x,x,y,y,y,x)", "s(x,y,x,y,x,y)", "s(y,x,x,x,y,y)"]

    def test_wnu(self):
        s = wnu(3)
        assert s.edge_names() == [["y", "x", "x"], ["x", "y", "x"], ["x", "x", "y"]]

    def test_wnu_needs_two(self):
        with pytest.raises(ParseError):
            wnu(1)

    @pytest.mark.parametrize("name, arity, edges", [
        ("siggers4", 2, 4),
        ("K3", 2, 6),
        ("olsak", 3, 6),
        ("wnu4", 4, 4),
        ("cyclic5", 2, 5),
    ])
    def test_presets(self, name, arity, edges):
        s = preset(name)
        assert s.arity == arity
        assert len(s.edges) == edges

    def test_preset_families(self):
        families = presets(4)
        assert list(families) == ["siggers4", "k3", "olsak", "wnu4", "cyclic4"]
        assert all(preset(name).edges == s.edges for name, s in families.items())

    def test_unknown_preset(self):
        with pytest.raises(ParseError):
            preset("petersen")

    @pytest.mark.parametrize("edges, vertices", [
        ([("a", "b"), ("a", "b")], None),
        ([("a", "b"), ("a", "b", "c")], None),
        ([("a", "b")], ("a",)),
        ([], None),
    ])
    def test_invalid_structures(self, edges, vertices):
        with pytest.raises(ParseError):
            structure_from_edges(edges, vertices=vertices)

    def test_load(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"name": "pair", "vertices": ["u", "v"], "edges": [["u", "v"], ["v", "u"]]}))
        s = load_structure(path)
        assert s.name == "pair" and s.edges == ((0, 1), (1, 0))
        assert s.to_document().edges == [["u", "v"], ["v", "u"]]


class TestHypothesisReport:
    @pytest.mark.parametrize("name", ["siggers4", "k3", "olsak", "wnu3", "wnu5"])
    def test_presets_satisfy(self, name):
        assert hypothesis_report(preset(name)).satisfied

    def test_directed_cycle_fails(self):
        flags = hypothesis_report(preset("cyclic3"))
        assert flags.smooth
        assert flags.failures() == ["algebraic length 1"]

    def test_olsak_is_symmetric(self):
        flags = hypothesis_report(olsak())
        assert flags.cyclic and flags.symmetric and flags.two_transitive


class TestIndicator:
    def test_edge_tuples_follow_enumeration(self):
        tuples = edge_tuples(siggers4(), WeakOrder((0, 2, 1)), 1)
        assert [t.values for t in tuples] == [(0, 2), (2, 0), (1, 2), (0, 1)]

    def test_indicator_orbits(self):
        R = indicator(siggers4(), WeakOrder((0, 2, 1)), 1)
        assert R.orbits == frozenset({WeakOrder((0, 1)), WeakOrder((1, 0))})

    def test_constant_assignment(self):
        R = indicator(siggers4(), WeakOrder((0, 0, 0)), 1)
        assert R.orbits == frozenset({WeakOrder((0, 0))})

    def test_assignment_count(self):
        assert len(ConditionVerifier(siggers4(), MIN, 2).assignments()) == 4683


class TestReplay:
    def test_eval_generator(self):
        assert eval_term(Generator(0), [GroundTuple.of(5, 3)]) == GroundTuple.of(1, 0)

    def test_binding_takes_first_edge(self):
        tuples = [GroundTuple.of(0, 1), GroundTuple.of(3, 4), GroundTuple.of(1, 0)]
        assert generator_binding([WeakOrder((1, 0)), WeakOrder((0, 1))], tuples) == [2, 0]

    def test_binding_missing_orbit(self):
        with pytest.raises(HypothesisViolation):
            generator_binding([WeakOrder((1, 0))], [GroundTuple.of(0, 1)])

    def test_sides_share_orbit(self):
        term = Apply(MIN, alignment_of((0, 1), (1, 0)), Generator(0), Generator(1))
        replay = replay_sides(term, [GroundTuple.of(0, 1), GroundTuple.of(1, 0)], [0, 1], 2)
        assert replay.consistent
        assert replay.shared_orbit == WeakOrder((0,))

    def test_sides_disagree(self):
        with pytest.raises(ContractViolation):
            replay_sides(Generator(0), [GroundTuple.of(0, 1, 1, 0)], [0], 2)


class TestVerify:
    @pytest.mark.parametrize("clone", [MIN, MI, MX, LL])
    def test_siggers_dimension_one(self, clone):
        report = verify_condition(siggers4(), clone, 1)
        assert report.assignments == 13
        assert report.success and report.verified == 13
        assert report.identities[0] == "s(a,r,e,a) ≈ s(r,a,r,e)"
        for outcome in report.outcomes:
            assert 0 <= outcome.witness < len(report.witnesses)
            assert outcome.seconds is None

    def test_identical_indicators_share_a_witness(self):
        report = verify_condition(siggers4(), MIN, 1)
        distinct = {frozenset(indicator(siggers4(), WeakOrder(o.assignment), 1).orbits) for o in report.outcomes}
        assert len(report.witnesses) == len(distinct)

    def test_k3_with_workers_and_timings(self):
        report = verify_condition(k3(), MI, 1, max_workers=2, timings=True)
        assert report.success
        assert all(o.seconds is not None for o in report.outcomes)

    def test_hypergraph(self):
        report = verify_condition(wnu(3), MI, 1)
        assert report.assignments == 3
        assert report.success

    def test_directed_cycle_rejected(self):
        with pytest.raises(HypothesisViolation):
            verify_condition(preset("cyclic3"), MIN, 1)

    def test_budget_failure_is_reported(self):
        report = verify_condition(siggers4(), MIN, 1, budget=1)
        assert not report.success
        failed = [o for o in report.outcomes if not o.success]
        assert failed and all(o.diagnostic.startswith("BudgetExceeded") for o in failed)


MATRIX_PRESETS = ["siggers4", "k3", "olsak", "wnu3", "wnu4"]
MATRIX_CLONES = [MIN, MI, MX, LL, CONST] + [dual_of(c) for c in (MIN, MI, MX, LL, CONST)]


def assert_witnesses_replay(report, structure):
    terms = [term_from_document(doc) for doc in report.witnesses]
    for outcome in report.outcomes:
        assert outcome.success, outcome.diagnostic
        term, basis = terms[outcome.witness]
        tuples = edge_tuples(structure, WeakOrder(outcome.assignment), report.k)
        replay = replay_sides(term, tuples, generator_binding(basis, tuples), structure.arity)
        assert replay.shared_orbit.to_list() == outcome.shared_orbit


class TestConditionMatrix:
    @pytest.mark.parametrize("clone", MATRIX_CLONES, ids=str)
    @pytest.mark.parametrize("name", MATRIX_PRESETS)
    def test_dimension_one(self, name, clone):
        s = preset(name)
        report = verify_condition(s, clone, 1)
        assert report.success and report.verified == report.assignments
        assert report.clone == str(clone)
        assert_witnesses_replay(report, s)

    @pytest.mark.slow
    @pytest.mark.parametrize("clone", MATRIX_CLONES, ids=str)
    @pytest.mark.parametrize("name", MATRIX_PRESETS)
    def test_dimension_two(self, name, clone):
        s = preset(name)
        report = verify_condition(s, clone, 2, max_workers=4)
        assert report.success and report.verified == report.assignments
        assert_witnesses_replay(report, s)

    def test_directed_cycle_flag(self):
        flags = hypothesis_report(preset("cyclic3"))
        assert flags.failures() == ["algebraic length 1"]
