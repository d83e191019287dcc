"""Vote rules, pairwise deltas, blocking edges, and instance invariants."""

from fractions import Fraction

import pytest

from conftest import build, small_random_family
from popmatch.core import (
    EMPTY_MATCHING,
    GAMMA_MODE,
    Edge,
    Instance,
    Matching,
    StabilityNotion,
    VoteRule,
    blocking_edges,
    delta,
    is_maximal,
    is_stable,
    is_valid,
    vote,
    vote_on_edges,
)
from popmatch.errors import RuleModeMismatchError
from popmatch.gadgets import fixtures, gadget_smti
from popmatch.oracle import enumerate_matchings

ALL_RULES = list(VoteRule)


@pytest.fixture(scope="module")
def ex1():
    return fixtures()["example1"]


@pytest.fixture(scope="module")
def two_edge():
    # u1 has f (value 2) and e (value 1); w-side values immaterial here
    return build(["u1"], ["w1", "w2"],
                 [("f", "u1", "w1", 2, 1), ("e", "u1", "w2", 1, 1)])


class TestVoteOnEdges:
    def test_same_edge_is_indifferent_under_every_rule(self, two_edge):
        f = two_edge.by_id["f"]
        for rule in ALL_RULES:
            assert vote_on_edges(two_edge, "u1", f, f, rule) == 0
            assert vote_on_edges(two_edge, "u1", None, None, rule) == 0

    def test_unmatched_sentinel_loses_to_any_edge(self, two_edge):
        e = two_edge.by_id["e"]
        for rule in ALL_RULES:
            assert vote_on_edges(two_edge, "u1", None, e, rule) == -1
            assert vote_on_edges(two_edge, "u1", e, None, rule) == +1

    def test_classic_follows_value_sign(self, two_edge):
        f, e = two_edge.by_id["f"], two_edge.by_id["e"]
        assert vote_on_edges(two_edge, "u1", f, e, VoteRule.CLASSIC) == +1
        assert vote_on_edges(two_edge, "u1", e, f, VoteRule.CLASSIC) == -1

    def test_classic_ties_on_equal_values(self):
        inst = build(["u1"], ["w1", "w2"],
                     [("e1", "u1", "w1", 2, 1), ("e2", "u1", "w2", 2, 1)])
        e1, e2 = inst.by_id["e1"], inst.by_id["e2"]
        assert vote_on_edges(inst, "u1", e1, e2, VoteRule.CLASSIC) == 0

    def test_weak_favours_incumbent_on_equal_values(self):
        inst = build(["u1"], ["w1", "w2"],
                     [("e1", "u1", "w1", 2, 1), ("e2", "u1", "w2", 2, 1)])
        e1, e2 = inst.by_id["e1"], inst.by_id["e2"]
        assert vote_on_edges(inst, "u1", e1, e2, VoteRule.WEAK) == +1
        assert vote_on_edges(inst, "u1", e2, e1, VoteRule.WEAK) == +1

    def test_super_favours_challenger_on_equal_values(self):
        inst = build(["u1"], ["w1", "w2"],
                     [("e1", "u1", "w1", 3, 1), ("e2", "u1", "w2", 3, 1)])
        e1, e2 = inst.by_id["e1"], inst.by_id["e2"]
        assert vote_on_edges(inst, "u1", e1, e2, VoteRule.SUPER) == -1
        assert vote_on_edges(inst, "u1", e2, e1, VoteRule.SUPER) == -1

    def test_gamma_needs_threshold_sized_improvement(self):
        # improvement of 0.4 is below the challenger's threshold 0.5
        inst = build(["u1"], ["w1", "w2"],
                     [("m", "u1", "w1", 1, 1, 1, 1),
                      ("n", "u1", "w2", Fraction(7, 5), 1, Fraction(1, 2), 1)],
                     mode=GAMMA_MODE)
        m, n = inst.by_id["m"], inst.by_id["n"]
        assert vote_on_edges(inst, "u1", m, n, VoteRule.GAMMA) == +1
        assert vote_on_edges(inst, "u1", n, m, VoteRule.GAMMA) == +1

    def test_gamma_exact_threshold_boundary_flips(self):
        inst = build(["u1"], ["w1", "w2"],
                     [("m", "u1", "w1", 1, 1, 1, 1),
                      ("n", "u1", "w2", Fraction(3, 2), 1, Fraction(1, 2), 1)],
                     mode=GAMMA_MODE)
        m, n = inst.by_id["m"], inst.by_id["n"]
        assert vote_on_edges(inst, "u1", m, n, VoteRule.GAMMA) == -1

    def test_gamma_rule_requires_gamma_mode(self, two_edge):
        with pytest.raises(RuleModeMismatchError):
            vote(two_edge, "u1", EMPTY_MATCHING, EMPTY_MATCHING, VoteRule.GAMMA)


class TestVoteProperties:
    def test_classic_antisymmetry_on_all_fixture_pairs(self, ex1):
        ms = list(enumerate_matchings(ex1))
        for m in ms:
            for n in ms:
                for a in ex1.agents:
                    assert (vote(ex1, a, m, n, VoteRule.CLASSIC)
                            + vote(ex1, a, n, m, VoteRule.CLASSIC)) == 0

    @pytest.mark.parametrize("rule", [VoteRule.WEAK, VoteRule.SUPER])
    def test_asymmetric_rules_never_sum_negative(self, ex1, rule):
        ms = list(enumerate_matchings(ex1))
        for m in ms:
            for n in ms:
                for a in ex1.agents:
                    assert vote(ex1, a, m, n, rule) + vote(ex1, a, n, m, rule) >= 0

    def test_weak_equal_value_distinct_partners_sums_to_two(self):
        inst = build(["u1"], ["w1", "w2"],
                     [("e1", "u1", "w1", 2, 1), ("e2", "u1", "w2", 2, 1)])
        m, n = Matching.of("e1"), Matching.of("e2")
        total = (vote(inst, "u1", m, n, VoteRule.WEAK)
                 + vote(inst, "u1", n, m, VoteRule.WEAK))
        assert total == 2

    def test_rule_nesting_super_weak_gamma(self):
        # super is most favourable to the challenger, gamma the least
        for inst in small_random_family(mode_gamma=True, count=10, max_edges=6):
            for agent in inst.agents:
                options = list(inst.incident[agent]) + [None]
                for m in options:
                    for n in options:
                        vs = vote_on_edges(inst, agent, m, n, VoteRule.SUPER)
                        vw = vote_on_edges(inst, agent, m, n, VoteRule.WEAK)
                        vg = vote_on_edges(inst, agent, m, n, VoteRule.GAMMA)
                        assert vs <= vw <= vg


class TestDelta:
    def test_delta_of_matching_with_itself_is_zero(self, ex1):
        for m in enumerate_matchings(ex1):
            assert delta(ex1, m, m, VoteRule.WEAK) == 0

    def test_fixture_head_to_head_vote_breakdown(self, ex1):
        f = Matching.of("f1", "f2")
        e = Matching.of("e1", "e2", "e3")
        votes = {a: vote(ex1, a, f, e, VoteRule.WEAK) for a in ex1.agents}
        assert votes == {"u1": +1, "u2": +1, "u3": -1,
                         "w1": -1, "w2": +1, "w3": +1}
        assert delta(ex1, f, e, VoteRule.WEAK) == 2
        assert delta(ex1, e, f, VoteRule.WEAK) == -2

    def test_example2_popular_matching_never_loses_to_singleton(self):
        ex2 = fixtures()["example2"]
        e = Matching.of("e1", "e2", "e3", "e4")
        assert delta(ex2, e, Matching.of("f1"), VoteRule.WEAK) >= 0


class TestBlockingEdges:
    def test_example3_reference_matching_is_weakly_stable(self):
        ex3 = fixtures()["example3"]
        e = Matching.of("e1", "e2", "e3", "e4", "e5")
        assert blocking_edges(ex3, e, StabilityNotion.WEAK) == []
        assert is_stable(ex3, e, StabilityNotion.WEAK)

    def test_every_edge_blocks_the_empty_matching(self, ex1):
        got = blocking_edges(ex1, EMPTY_MATCHING, StabilityNotion.WEAK)
        assert got == [e.id for e in ex1.edges]

    def test_reduction_gadget_blocking_scan(self):
        # matched u1 and its fresh top partner form the only blocking pair
        prime = gadget_smti(build(["u1"], ["w1"], [("e1", "u1", "w1", 1, 1)]))
        matched = Matching.of("e1", "z1b")
        assert blocking_edges(prime, matched, StabilityNotion.WEAK) == ["z1a"]

    def test_gamma_min_blocking_needs_mode(self, ex1):
        with pytest.raises(RuleModeMismatchError):
            blocking_edges(ex1, EMPTY_MATCHING, StabilityNotion.GAMMA_MIN)

    def test_weak_stability_implies_gamma_min_stability(self):
        for inst in small_random_family(mode_gamma=True, count=15, max_edges=8):
            for m in enumerate_matchings(inst):
                if not blocking_edges(inst, m, StabilityNotion.WEAK):
                    assert not blocking_edges(inst, m, StabilityNotion.GAMMA_MIN)

    def test_double_negative_gamma_votes_mean_a_blocking_edge(self):
        for inst in small_random_family(mode_gamma=True, count=10, max_edges=6):
            ms = list(enumerate_matchings(inst))
            for m in ms:
                for n in ms:
                    blockers = set(blocking_edges(inst, m, StabilityNotion.GAMMA_MIN))
                    for eid in n:
                        e = inst.by_id[eid]
                        if (eid not in m
                                and vote(inst, e.u, m, n, VoteRule.GAMMA) == -1
                                and vote(inst, e.w, m, n, VoteRule.GAMMA) == -1):
                            assert eid in blockers


class TestMatchingPredicates:
    def test_perfect_matching_is_maximal(self, ex1):
        assert is_maximal(ex1, Matching.of("e1", "e2", "e3"))

    def test_two_edges_at_one_agent_is_invalid(self):
        inst = build(["u1"], ["w1", "w2"],
                     [("e1", "u1", "w1", 1, 1), ("e2", "u1", "w2", 1, 1)])
        assert not is_valid(inst, Matching.of("e1", "e2"))
        assert is_valid(inst, Matching.of("e1"))

    def test_foreign_edge_id_is_invalid(self, ex1):
        assert not is_valid(ex1, Matching.of("nope"))

    def test_empty_matching_is_maximal_without_edges(self):
        assert is_maximal(build(["u1"], ["w1"], []), EMPTY_MATCHING)


class TestInstanceValidation:
    def test_duplicate_agent_rejected(self):
        with pytest.raises(ValueError, match="duplicate agent"):
            build(["a", "a"], ["w1"], [])
        with pytest.raises(ValueError, match="duplicate agent"):
            build(["a"], ["a"], [])

    def test_duplicate_edge_id_rejected(self):
        with pytest.raises(ValueError, match="duplicate edge"):
            build(["u1"], ["w1"],
                  [("e", "u1", "w1", 1, 1), ("e", "u1", "w1", 2, 2)])

    def test_endpoints_must_be_declared_on_the_right_side(self):
        with pytest.raises(ValueError, match="not a U-agent"):
            build(["u1"], ["w1"], [("e", "w1", "w1", 1, 1)])
        with pytest.raises(ValueError, match="not a W-agent"):
            build(["u1"], ["w1"], [("e", "u1", "u1", 1, 1)])

    def test_negative_valuation_rejected(self):
        with pytest.raises(ValueError, match=">= 0"):
            build(["u1"], ["w1"], [("e", "u1", "w1", 1, -1)])

    def test_gamma_fields_must_match_mode(self):
        with pytest.raises(ValueError, match="required in gamma mode"):
            build(["u1"], ["w1"], [("e", "u1", "w1", 1, 1)], mode=GAMMA_MODE)
        with pytest.raises(ValueError, match="not allowed in weak mode"):
            build(["u1"], ["w1"], [("e", "u1", "w1", 1, 1, 1, 1)])
        with pytest.raises(ValueError, match="> 0"):
            build(["u1"], ["w1"], [("e", "u1", "w1", 1, 1, 0, 1)], mode=GAMMA_MODE)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError, match="unknown mode"):
            Instance(("u1",), ("w1",), (), "strict")

    def test_parallel_edges_are_allowed(self):
        inst = build(["u1"], ["w1"],
                     [("e1", "u1", "w1", 1, 1), ("e2", "u1", "w1", 2, 2)])
        assert len(inst.incident["u1"]) == 2


class TestInstanceAccessors:
    def test_value_rejects_non_endpoint(self, two_edge):
        with pytest.raises(ValueError, match="not an endpoint"):
            two_edge.value(two_edge.by_id["f"], "w2")

    def test_gamma_lookup_requires_gamma_edge(self, two_edge):
        with pytest.raises(ValueError, match="no gamma"):
            two_edge.gamma(two_edge.by_id["f"], "u1")

    def test_assignment_rejects_conflicts_and_unknown_ids(self, two_edge):
        with pytest.raises(ValueError, match="matched twice"):
            two_edge.assignment(Matching.of("f", "e"))
        with pytest.raises(ValueError, match="unknown edge"):
            two_edge.assignment(Matching.of("zzz"))

    def test_matched_edge_lookup(self, two_edge):
        m = Matching.of("e")
        assert two_edge.matched_edge(m, "u1").id == "e"
        assert two_edge.matched_edge(m, "w1") is None

    def test_edge_listing_order_is_preserved(self, ex1):
        assert [e.id for e in ex1.edges] == ["f1", "f2", "e1", "e2", "e3"]
        assert [e.id for e in ex1.incident["u1"]] == ["f1", "e1"]
