"""Edge duplication: block templates, threshold interleaving, validator."""

import pytest

from conftest import build, single_edge
from popmatch.core import GAMMA_MODE
from popmatch.duplication import (
    COPY_ORDER,
    CopyType,
    DuplicatedInstance,
    EdgeCopy,
    build_duplicated,
    validate_duplicated,
)
from popmatch.gadgets import fixtures, random_instance


def tokens(dup, agent):
    return " ".join(k.token for k in dup.pref[agent])


def test_single_edge_block_templates():
    dup = build_duplicated(single_edge())
    assert tokens(dup, "u1") == "a(e) b(e) c(e) x(e) y(e) z(e)"
    assert tokens(dup, "w1") == "z(e) y(e) x(e) c(e) b(e) a(e)"


def test_copy_order_is_the_u_side_template():
    assert [t.value for t in COPY_ORDER] == ["a", "b", "c", "x", "y", "z"]


def test_edge_copy_token_format():
    assert EdgeCopy("f1", CopyType.B).token == "b(f1)"


def test_weak_two_edge_interleaving_golden():
    # u1 values f1 over e1, so f1's secondary copies jump ahead of e1's
    dup = build_duplicated(fixtures()["example2"])
    assert tokens(dup, "u1") == ("a(f1) b(f1) a(e1) b(e1) c(f1) c(e1) "
                                 "x(f1) y(f1) x(e1) y(e1) z(f1) z(e1)")


def test_weak_w_side_mirrored_golden():
    # w2 values f1 and e2 equally; the earlier-listed f1 wins each tie
    dup = build_duplicated(fixtures()["example2"])
    assert tokens(dup, "w2") == ("z(f1) z(e2) y(f1) y(e2) x(f1) x(e2) "
                                 "c(f1) c(e2) b(f1) b(e2) a(f1) a(e2)")


def test_gamma_threshold_blocks_interleaving():
    # value gap 1 stays below f's threshold 2, so b(f) cannot pass a(e)
    inst = build(["u1"], ["w1", "w2"],
                 [("f", "u1", "w1", 3, 1, 2, 1), ("e", "u1", "w2", 2, 1, 1, 1)],
                 mode=GAMMA_MODE)
    dup = build_duplicated(inst)
    assert tokens(dup, "u1") == ("a(f) a(e) b(f) b(e) c(f) c(e) "
                                 "x(f) x(e) y(f) y(e) z(f) z(e)")


def test_gamma_threshold_met_interleaves():
    # gap 2 meets the threshold, giving the weak-mode shape back
    inst = build(["u1"], ["w1", "w2"],
                 [("f", "u1", "w1", 4, 1, 2, 1), ("e", "u1", "w2", 2, 1, 1, 1)],
                 mode=GAMMA_MODE)
    dup = build_duplicated(inst)
    assert tokens(dup, "u1").startswith("a(f) b(f) a(e) b(e)")


def test_list_length_is_six_per_incident_edge():
    for seed in range(5):
        inst = random_instance(3, 3, 0.8, [1, 2], seed=seed)
        dup = build_duplicated(inst)
        for agent in inst.agents:
            assert len(dup.pref[agent]) == 6 * len(inst.incident[agent])
            assert len(set(dup.pref[agent])) == len(dup.pref[agent])


def test_build_is_deterministic():
    inst = random_instance(4, 4, 0.7, [1, 2, 3], seed=11)
    assert build_duplicated(inst).pref == build_duplicated(inst).pref


def test_rank_inverts_preference_lists():
    dup = build_duplicated(single_edge())
    assert dup.rank["u1"][EdgeCopy("e", CopyType.A)] == 0
    assert dup.rank["w1"][EdgeCopy("e", CopyType.A)] == 5


class TestValidator:
    def test_validator_accepts_built_output(self):
        # includes degenerate thresholds larger than every valuation
        for seed in range(200):
            inst = random_instance(
                1 + seed % 4, 1 + seed // 3 % 4, 0.7, [1, 2, 3],
                [10] if seed % 2 else ([1, 2] if seed % 3 else None), seed=seed)
            assert validate_duplicated(build_duplicated(inst)) == []

    def _corrupt(self, mutate):
        inst = fixtures()["example2"]
        dup = build_duplicated(inst)
        pref = dict(dup.pref)
        lst = list(pref["u1"])
        mutate(lst)
        return validate_duplicated(
            DuplicatedInstance(inst, pref | {"u1": tuple(lst)}))

    def test_missing_copy_is_flagged(self):
        got = self._corrupt(lambda lst: lst.remove(EdgeCopy("e1", CopyType.Y)))
        assert any("missing copy y(e1)" in v for v in got)

    def test_duplicate_copy_is_flagged(self):
        got = self._corrupt(lambda lst: lst.__setitem__(0, lst[1]))
        assert any("duplicate copies" in v for v in got)

    def test_block_order_breach_is_flagged(self):
        # pull a c-copy ahead of the b-copies
        def swap(lst):
            i = lst.index(EdgeCopy("f1", CopyType.C))
            lst[0], lst[i] = lst[i], lst[0]
        got = self._corrupt(swap)
        assert any("must precede" in v for v in got)

    def test_threshold_breach_is_flagged(self):
        # swapping a(f1) and a(e1) contradicts b(f1) sitting between them
        def swap(lst):
            i, j = lst.index(EdgeCopy("f1", CopyType.A)), lst.index(EdgeCopy("e1", CopyType.A))
            lst[i], lst[j] = lst[j], lst[i]
        got = self._corrupt(swap)
        assert any("threshold rule" in v for v in got)

    def test_value_order_breach_is_flagged(self):
        def swap(lst):
            i, j = lst.index(EdgeCopy("f1", CopyType.C)), lst.index(EdgeCopy("e1", CopyType.C))
            lst[i], lst[j] = lst[j], lst[i]
        got = self._corrupt(swap)
        assert any("not sorted by value" in v for v in got)
