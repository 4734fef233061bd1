import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from fusiontypes.enumerator import enumerate_raw
from fusiontypes.rulebook import (
    RULE_ORDER,
    RULES,
    Mode,
    Outcome,
    RuleError,
    RuleSetConfig,
    RuleVerdict,
    apply_rule,
    apply_ruleset,
    filter_types,
)
from fusiontypes.typespace import Rule6Scope, RuleContext, SignatureError, parse_signature

P = parse_signature


def ctx_for(sig, **kw):
    return RuleContext.for_dim(sig.global_dim, **kw)


def verdict(rule_id, text, **kw):
    sig = P(text)
    return apply_rule(rule_id, sig, ctx_for(sig, **kw))


def brute_filter(n, cfg):
    """Reference: apply the rule set to every raw non-pointed type."""
    ctx = RuleContext.for_dim(n)
    survivors, tallies = [], {r: 0 for r in cfg.enabled_rules}
    for sig in enumerate_raw(n):
        v = apply_ruleset(sig, ctx, cfg)
        if v.passed:
            survivors.append(sig)
        else:
            tallies[v.rule_id] += 1
    return survivors, tallies


# -- per-rule examples ---------------------------------------------------------


def test_r2_rejects_odd_count():
    v = verdict("R2", "(1,6;3,1)")  # N = 15
    assert v.outcome is Outcome.REJECT and v.rule_id == "R2"
    assert "odd count" in v.reason and v.citation


def test_r3_rejects_n1_not_dividing():
    # 153 + 2*81 = 315; 315 = 2*153 + 9, so 153 does not divide 315
    v = verdict("R3", "(1,153;9,2)")
    assert v.rule_id == "R3" and "153" in v.reason


def test_r8_pass_on_golden():
    assert verdict("R8", "(1,15;5,12)").passed


def test_r5_pass_on_golden():
    # 3 + 9*2 = 21 divides 315
    assert verdict("R5", "(1,3;3,2;7,6)").passed


def test_ruleset_pass_on_golden():
    sig = P("(1,63;3,28)")
    assert apply_ruleset(sig, ctx_for(sig), RuleSetConfig.paper()).passed


def test_ruleset_construction_error_upstream():
    with pytest.raises(SignatureError):
        P('{"dim": 315, "rows": [{"d": 1, "n": 15}, {"d": 3, "n": 34}]}')


def test_r9_fires_on_three_rows_with_trivial_pic():
    # 1 + 36 + 300 = 337; R9 on its own
    assert verdict("R9", "(1,1;3,4;5,12)").rule_id == "R9"
    # first rejecting rule under paper mode is R1 there (3 does not divide 337)
    sig = P("(1,1;3,4;5,12)")
    assert apply_ruleset(sig, ctx_for(sig), RuleSetConfig.paper()).rule_id == "R1"


def test_r9_first_rejection_found_by_search():
    # search small raw type sets for a three-row, n1 = 1 type that gets past R1-R8
    found = None
    for n in range(2, 60):
        ctx = RuleContext.for_dim(n)
        for sig in enumerate_raw(n):
            if len(sig.rows) == 3 and sig.unit_count == 1:
                v = apply_ruleset(sig, ctx, RuleSetConfig.paper())
                if v.rule_id == "R9":
                    found = sig
                    break
        if found:
            break
    # 1 + 2*4 + 9 = 18: dims 2, 3 divide 18, even N so the parity rules are idle
    assert str(found) == "(1,1;2,2;3,1)"


# hand-constructed rejections, one per rule; each comment shows the arithmetic
REJECTING = [
    ("R1", "(1,7;2,2)", {}),  # N = 15, 2 does not divide 15
    ("R2", "(1,6;3,1)", {}),  # N = 15, count 1 is odd
    ("R3", "(1,153;9,2)", {}),  # N = 315, 153 does not divide 315
    ("R4", "(1,5;3,2)", {}),  # N = 23, 3 does not divide 5
    ("R5", "(1,3;3,2;5,2)", {}),  # N = 71, 21 does not divide 71
    ("R6", "(1,9;3,14;5,18)", {"rule6_scope": Rule6Scope.STRICT_NO_NINE}),  # N = 585, 135 does not divide 585
    ("R6", "(1,1;3,4)", {}),  # N = 37 two-row: 1 + 36 = 37 divides; see test below
    ("R7", "(1,9;5,2)", {}),  # N = 59, 5 does not divide 9
    ("R8", "(1,2;3,1)", {}),  # N = 11, 3 does not divide 2
    ("R9", "(1,1;2,2;3,1)", {}),  # N = 18, three rows with n1 = 1
    ("R10", "(1,2;3,2)", {}),  # N = 20, common prime 3 does not divide 2
]


@pytest.mark.parametrize("rule_id,text,kw", [r for r in REJECTING if r[1] != "(1,1;3,4)"])
def test_hand_constructed_rejection(rule_id, text, kw):
    v = verdict(rule_id, text, **kw)
    assert v.outcome is Outcome.REJECT
    assert v.rule_id == rule_id
    assert v.citation == RULES[rule_id].citation


def test_r6_vacuous_in_two_row_scope():
    # for (1,m;3,n) the quantity m + 9n is N itself
    for text in ["(1,1;3,4)", "(1,63;3,28)", "(1,7;3,2)"]:
        assert verdict("R6", text).passed
        assert verdict("R6", text, rule6_scope=Rule6Scope.TWO_ROW_ONLY).passed


GOLDEN_PASSING = {
    "R1": "(1,63;3,28)",
    "R2": "(1,45;3,30)",
    "R3": "(1,9;3,34)",
    "R4": "(1,63;3,28)",
    "R5": "(1,3;3,2;7,6)",
    "R6": "(1,45;3,30)",
    "R7": "(1,45;5,18)",
    "R8": "(1,15;5,12)",
    "R9": "(1,9;3,16;9,2)",
}


@pytest.mark.parametrize("rule_id", sorted(GOLDEN_PASSING))
def test_golden_passing_input(rule_id, golden_tables):
    sig = P(GOLDEN_PASSING[rule_id])
    assert sig in golden_tables[sig.global_dim].as_set()
    assert apply_rule(rule_id, sig, ctx_for(sig)).passed


def test_r6_scopes_on_printed_survivors():
    # three printed survivors fail m + 9n | N under the literal reading
    for text, k in [("(1,15;3,20;5,12)", 195), ("(1,21;3,42;7,6)", 399), ("(1,15;3,30;15,2)", 285)]:
        sig = P(text)
        assert sig.global_dim % k != 0
        strict = apply_rule("R6", sig, ctx_for(sig, rule6_scope=Rule6Scope.STRICT_NO_NINE))
        assert strict.rule_id == "R6" and str(k) in strict.reason
        assert apply_rule("R6", sig, ctx_for(sig)).passed
    # the intermediate scope only reaches types without dims 5 and 7
    mid = dict(rule6_scope=Rule6Scope.NO_DIM_BETWEEN_4_AND_9)
    assert verdict("R6", "(1,15;3,20;5,12)", **mid).passed
    assert verdict("R6", "(1,15;3,30;15,2)", **mid).rule_id == "R6"
    assert verdict("R6", "(1,15;3,30;15,2)", rule6_scope=Rule6Scope.OFF).passed


def test_r7_needs_absence_of_3_and_7():
    assert verdict("R7", "(1,9;5,2)").rule_id == "R7"
    assert verdict("R7", "(1,1;3,2;5,2)").passed  # 1 + 18 + 50 = 69
    assert verdict("R7", "(1,10;5,2)").passed  # even N = 60


def test_parity_gated_rules_idle_for_even_dims():
    sig = P("(1,2;3,2)")  # N = 20
    ctx = ctx_for(sig)
    for rule_id in ("R2", "R4", "R5", "R6", "R7"):
        assert apply_rule(rule_id, sig, ctx).passed


# -- errors --------------------------------------------------------------------


def test_unknown_rule():
    sig = P("(1,63;3,28)")
    with pytest.raises(RuleError):
        apply_rule("R11", sig, ctx_for(sig))
    with pytest.raises(RuleError):
        RuleSetConfig.custom(["R1", "bogus"])


@pytest.mark.parametrize("kw", [{"braided": False}, {"integral": False}])
def test_missing_hypotheses(kw):
    sig = P("(1,63;3,28)")
    ctx = RuleContext.for_dim(315, **kw)
    with pytest.raises(RuleError):
        apply_rule("R1", sig, ctx)
    with pytest.raises(RuleError):
        apply_ruleset(sig, ctx, RuleSetConfig.paper())
    with pytest.raises(RuleError):
        filter_types(315, ctx)


def test_parity_mismatch():
    sig = P("(1,63;3,28)")
    with pytest.raises(RuleError):
        apply_rule("R1", sig, RuleContext.for_dim(316))


def test_verdict_invariant():
    with pytest.raises(ValueError):
        RuleVerdict(Outcome.REJECT, "R1", "x", "")


# -- configurations ------------------------------------------------------------


def test_modes():
    paper = RuleSetConfig.paper()
    assert paper.mode is Mode.PAPER
    assert paper.enabled_rules == ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9")
    assert paper.rule6_scope is Rule6Scope.TWO_ROW_ONLY
    strict = RuleSetConfig.strict()
    assert strict.enabled_rules == RULE_ORDER and strict.rule6_scope is Rule6Scope.STRICT_NO_NINE
    assert RuleSetConfig.custom(["R9", "R1"]).enabled_rules == ("R1", "R9")
    with pytest.raises(RuleError):
        RuleSetConfig.for_mode("custom")


# -- filter_types --------------------------------------------------------------


def test_filter_315_is_the_printed_list(golden_tables):
    result = filter_types(315)
    assert set(result.signatures) == golden_tables[315].as_set()
    assert len(result) == 7


def test_filter_585_contains_the_printed_list(golden_tables):
    result = filter_types(585)
    assert golden_tables[585].as_set() <= set(result.signatures)


# Extras under paper mode, checked by hand against every rule: each passes
# R1-R5, R7-R9, has three rows (so two-row-scoped R6 is idle), and fails the
# literal m + 9n | N.
EXPECTED_EXTRAS = {
    525: ["(1,15;3,40;5,6)"],  # 15 + 360 = 375, 525/375 not integral
    585: [
        "(1,45;3,10;5,18)",  # 45 + 90 = 135
        "(1,15;3,30;5,12)",  # 15 + 270 = 285
        "(1,9;3,14;5,18)",  # 9 + 126 = 135
        "(1,45;3,10;15,2)",  # 135
        "(1,9;3,14;15,2)",  # 135
    ],
}


@pytest.mark.parametrize("n", [525, 585])
def test_paper_mode_extras(n, golden_tables):
    extra = [s for s in filter_types(n).signatures if s not in golden_tables[n].as_set()]
    assert [str(s) for s in extra] == EXPECTED_EXTRAS[n]


def test_filter_9_has_no_nonpointed_survivor():
    result = filter_types(9)
    assert result.signatures == []
    # raw non-pointed: (1,5;2,1) and (1,1;2,2); 2 does not divide 9
    assert result.candidates_total == 2
    assert result.tallies["R1"] == 2


@pytest.mark.parametrize("mode", ["paper", "strict"])
def test_filter_matches_brute_force_small(mode):
    cfg = RuleSetConfig.for_mode(mode)
    for n in range(1, 121):
        result = filter_types(n, cfg=cfg)
        survivors, tallies = brute_filter(n, cfg)
        assert result.signatures == survivors, n
        assert result.tallies == tallies, n
        assert sum(tallies.values()) + len(survivors) == result.candidates_total


def test_filter_matches_brute_force_315():
    cfg = RuleSetConfig.paper()
    result = filter_types(315, cfg=cfg)
    survivors, tallies = brute_filter(315, cfg)
    assert result.signatures == survivors
    assert result.tallies == tallies


@pytest.mark.parametrize(
    "rules",
    [(), ("R2",), ("R3",), ("R2", "R3"), ("R1", "R3", "R8"), ("R4", "R9"), ("R1", "R2", "R10")],
)
def test_custom_rule_sets_match_brute_force(rules):
    cfg = RuleSetConfig.custom(rules)
    for n in (45, 63, 72, 75, 99, 105):
        result = filter_types(n, cfg=cfg)
        survivors, tallies = brute_filter(n, cfg)
        assert result.signatures == survivors, (rules, n)
        assert result.tallies == tallies, (rules, n)


def test_filter_tallies_conserve_at_golden_dims():
    for n in (315, 495, 525, 585, 693, 735):
        r = filter_types(n)
        assert sum(r.tallies.values()) + len(r) == r.candidates_total


# -- properties ----------------------------------------------------------------


rule_subsets = st.lists(st.sampled_from(RULE_ORDER), unique=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 90), rule_subsets, rule_subsets)
def test_monotone_in_enabled_rules(n, a, b):
    small = RuleSetConfig.custom(a)
    big = RuleSetConfig.custom(set(a) | set(b))
    assert set(filter_types(n, cfg=big).signatures) <= set(filter_types(n, cfg=small).signatures)


def test_reordering_rules_keeps_outcome():
    rng = random.Random(7)
    for n in (45, 63, 105, 135, 225):
        ctx = RuleContext.for_dim(n)
        for sig in enumerate_raw(n):
            outcomes = set()
            rejecting = set()
            order = list(RULE_ORDER)
            for _ in range(3):
                rng.shuffle(order)
                first = next((r for r in order if not apply_rule(r, sig, ctx).passed), None)
                outcomes.add(first is None)
                if first:
                    rejecting.add(first)
            assert len(outcomes) == 1
            canonical = apply_ruleset(sig, ctx, RuleSetConfig.strict())
            assert canonical.passed == (not rejecting)


def test_no_false_eliminations_on_goldens(golden_tables):
    total = 0
    for table in golden_tables.values():
        ctx = RuleContext.for_dim(table.dim)
        for sig in table.signatures:
            v = apply_ruleset(sig, ctx, RuleSetConfig.paper())
            assert v.passed, (str(sig), v)
            total += 1
    assert total == 55


def test_r10_consistent_with_goldens(golden_tables):
    for table in golden_tables.values():
        for sig in table.signatures:
            assert apply_rule("R10", sig, ctx_for(sig)).passed, str(sig)


def test_parity_soundness_of_survivors():
    for n in range(3, 765, 2):
        for sig in filter_types(n).signatures:
            assert all(d % 2 == 1 and c % 2 == 0 for d, c in sig.nonunit_rows), (n, str(sig))


def test_rule_order_is_fixed_and_public():
    assert RULE_ORDER == tuple(f"R{i}" for i in range(1, 11))
    assert all(RULES[r].citation for r in RULE_ORDER)


def test_no_scope_on_dims_and_n1_separates_extra_from_printed(golden_tables):
    extra, printed = P("(1,15;3,30;5,12)"), P("(1,15;3,20;5,12)")
    assert printed in golden_tables[495].as_set()
    assert extra not in golden_tables[585].as_set() and extra in filter_types(585).signatures
    assert (extra.nonunit_dims, extra.unit_count) == (printed.nonunit_dims, printed.unit_count)
    strict = Rule6Scope.STRICT_NO_NINE
    assert verdict("R6", str(extra), rule6_scope=strict).rule_id == "R6"  # 285 does not divide 585
    assert verdict("R6", str(printed), rule6_scope=strict).rule_id == "R6"  # 195 does not divide 495
