"""Aggregation rules, the five-axiom audit and SWF serialization."""

import json

import pytest

from arrovian.profiles import Domain, TriPartition, pair_partition, profile_from_texts
from arrovian.relations import PairStance, WeakOrder, parse_weak_order, unordered_pairs
from arrovian.swf import (
    CompositionFailure,
    ExplicitSwf,
    PairwiseRuleSwf,
    SwfFormatError,
    anti_dictator_explicit,
    borda_explicit,
    check_independence,
    check_unanimity,
    constant_explicit,
    constant_rules,
    derive_rules,
    dictator_explicit,
    dictator_rules,
    expand_to_explicit,
    find_dictator,
    full_report,
    majority_rules,
    parse_swf_json,
    swf_to_json_dict,
)

ABC = parse_weak_order("A>B>C")


# --- composition -------------------------------------------------------------


def test_dictator_rules_assemble_to_the_dictators_order():
    swf = dictator_rules(1, 3, 2, Domain.WEAK)
    for f in swf.domain_profiles():
        assert swf.assemble(f) == f.prefs[1]


def test_majority_rules_hit_a_composition_failure():
    swf = majority_rules(3, 2, Domain.LINEAR)
    f = profile_from_texts(["A>B>C", "B>C>A"])
    out = swf.assemble(f)
    assert isinstance(out, CompositionFailure)
    assert out.validation.axiom == "O2"
    # the half-agreed pair (B, C) is decided, the crossed pairs tie
    assert out.relation.edges() == [(1, 2)]


def test_stance_flips_for_non_canonical_pair():
    swf = dictator_rules(0, 3, 2, Domain.LINEAR)
    f = profile_from_texts(["B>A>C", "A>B>C"])
    assert swf.stance(f, 0, 1) is PairStance.SECOND_PREFERRED
    assert swf.stance(f, 1, 0) is PairStance.FIRST_PREFERRED


def test_rule_stance_errors():
    swf = dictator_rules(0, 3, 2, Domain.LINEAR)
    t = pair_partition(profile_from_texts(["A>B>C", "A>B>C"]), 0, 1)
    with pytest.raises(ValueError, match="canonical"):
        swf.rule_stance((1, 0), t)
    with pytest.raises(LookupError, match="no rule table"):
        swf.rule_stance((0, 3), t)
    tie = TriPartition(2, frozenset(), frozenset(), frozenset({0, 1}))
    with pytest.raises(LookupError, match="no rule for pair"):
        swf.rule_stance((0, 1), tie)


def test_explicit_verdict_lookup_error():
    swf = dictator_explicit(0, 3, 2, Domain.LINEAR)
    tied = profile_from_texts(["A~B>C", "A>B>C"])
    with pytest.raises(LookupError):
        swf.verdict(tied)


# --- unanimity ----------------------------------------------------------------


def test_dictator_satisfies_unanimity():
    assert check_unanimity(dictator_explicit(0, 3, 2, Domain.WEAK)).ok


def test_anti_dictator_fails_unanimity_with_replayable_witness():
    swf = anti_dictator_explicit(0, 3, 2, Domain.LINEAR)
    res = check_unanimity(swf)
    assert not res.ok
    a, b = res.pair
    f = res.profile
    assert all(f.stance(v, a, b) is PairStance.FIRST_PREFERRED for v in range(swf.n))
    assert swf.stance(f, a, b) is not PairStance.FIRST_PREFERRED


def test_constant_rule_fails_unanimity():
    res = check_unanimity(constant_explicit(ABC, 2, Domain.LINEAR))
    assert not res.ok


def test_unanimous_indifference_is_unconstrained():
    """Only unanimous strict preference binds the verdict.

    A rule that answers FIRST whenever its single voter is indifferent
    is a tie-breaking dictatorship; it must still pass the unanimity
    check, and it survives the whole a1-a4 battery.
    """
    tris = {c: TriPartition.from_code(1, c) for c in range(3)}
    table = {
        tris[0]: PairStance.FIRST_PREFERRED,
        tris[1]: PairStance.SECOND_PREFERRED,
        tris[2]: PairStance.FIRST_PREFERRED,
    }
    swf = PairwiseRuleSwf(3, 1, Domain.WEAK, {pair: dict(table) for pair in unordered_pairs(3)})
    report = full_report(swf)
    assert report.arrovian()
    assert report.dictator == 0


# --- independence ---------------------------------------------------------------


def test_pairwise_rules_are_independent_by_construction():
    res = check_independence(majority_rules(3, 2, Domain.WEAK))
    assert res.ok and res.by_construction


def test_dictator_explicit_is_independent():
    res = check_independence(dictator_explicit(1, 3, 2, Domain.LINEAR))
    assert res.ok and not res.by_construction


def test_borda_fails_independence_with_replayable_witness():
    swf = borda_explicit(3, 2, Domain.LINEAR)
    res = check_independence(swf)
    assert not res.ok
    x, y = res.pair
    f, g = res.profile_a, res.profile_b
    assert all(f.stance(v, x, y) is g.stance(v, x, y) for v in range(swf.n))
    assert swf.stance(f, x, y) is not swf.stance(g, x, y)


# --- dictators -------------------------------------------------------------------


@pytest.mark.parametrize("v", [0, 1])
def test_find_dictator_on_dictatorships(v):
    assert find_dictator(dictator_explicit(v, 3, 2, Domain.LINEAR)) == v
    assert find_dictator(dictator_rules(v, 3, 2, Domain.WEAK)) == v


def test_find_dictator_negative_cases():
    assert find_dictator(anti_dictator_explicit(0, 3, 2, Domain.LINEAR)) is None
    assert find_dictator(constant_explicit(ABC, 2, Domain.LINEAR)) is None
    assert find_dictator(majority_rules(3, 2, Domain.LINEAR)) is None


def test_majority_with_one_voter_is_a_dictatorship():
    assert find_dictator(majority_rules(3, 1, Domain.WEAK)) == 0


# --- the full audit -----------------------------------------------------------------


def test_report_dictator():
    report = full_report(dictator_explicit(1, 3, 2, Domain.LINEAR))
    assert report.failed() == ["a5"]
    assert report.dictator == 1
    assert report.arrovian()
    assert report.witnesses["a5"] == {"dictator": 1}


def test_report_majority_three_voters_fails_totality():
    report = full_report(majority_rules(3, 3, Domain.LINEAR))
    assert report.failed() == ["a2"]
    witness = report.witnesses["a2"]
    assert witness["axiom"] == "O2"
    # the witness profile really is a majority cycle
    swf = majority_rules(3, 3, Domain.LINEAR)
    assert isinstance(swf.assemble(witness["profile"]), CompositionFailure)


def test_report_two_alternatives_fails_a1():
    report = full_report(dictator_explicit(0, 2, 2, Domain.LINEAR))
    assert "a1" in report.failed()
    assert not report.arrovian()


def test_report_borda():
    report = full_report(borda_explicit(3, 2, Domain.LINEAR))
    assert "a4" in report.failed()


def test_report_json_rendering():
    report = full_report(dictator_explicit(1, 3, 2, Domain.LINEAR))
    doc = report.to_json_dict()
    assert doc["axioms"] == {"a1": "PASS", "a2": "PASS", "a3": "PASS", "a4": "PASS", "a5": "FAIL"}
    assert doc["dictator"] == 1
    assert doc["witnesses"]["a5"] == {"dictator": 1}
    report2 = full_report(anti_dictator_explicit(0, 3, 2, Domain.LINEAR))
    doc2 = report2.to_json_dict()
    w = doc2["witnesses"]["a3"]
    assert isinstance(w["profile"], list) and all(isinstance(t, str) for t in w["profile"])
    assert w["pair"] == ["A", "B"]


def test_incomplete_explicit_table_fails_a2():
    complete = dictator_explicit(0, 3, 2, Domain.LINEAR)
    verdicts = dict(complete.verdicts)
    verdicts.pop(next(iter(verdicts)))
    report = full_report(ExplicitSwf(3, 2, Domain.LINEAR, verdicts))
    assert "a2" in report.failed()


# --- representation changes ------------------------------------------------------------


def test_expand_then_derive_round_trip():
    rules = dictator_rules(1, 3, 2, Domain.WEAK)
    explicit = expand_to_explicit(rules)
    assert explicit.verdicts == dictator_explicit(1, 3, 2, Domain.WEAK).verdicts
    back = derive_rules(explicit)
    assert back.rules == rules.rules


def test_expand_reports_composition_failure():
    with pytest.raises(ValueError, match="do not assemble"):
        expand_to_explicit(majority_rules(3, 2, Domain.LINEAR))


def test_derive_rejects_dependent_rule():
    with pytest.raises(ValueError, match="independence fails"):
        derive_rules(borda_explicit(3, 2, Domain.LINEAR))


def test_constant_rules_assemble_to_the_constant():
    swf = constant_rules(parse_weak_order("B>A~C"), 2, Domain.LINEAR)
    for f in swf.domain_profiles():
        assert swf.assemble(f) == parse_weak_order("B>A~C")


# --- JSON ---------------------------------------------------------------------------------


def test_explicit_json_round_trip():
    swf = dictator_explicit(1, 3, 2, Domain.LINEAR)
    doc = swf_to_json_dict(swf)
    assert doc["kind"] == "explicit"
    parsed, alts = parse_swf_json(json.dumps(doc))
    assert isinstance(parsed, ExplicitSwf)
    assert parsed.verdicts == swf.verdicts
    assert alts.all_labels() == ("A", "B", "C")


def test_pairwise_json_round_trip():
    swf = majority_rules(3, 2, Domain.WEAK)
    doc = swf_to_json_dict(swf)
    assert doc["kind"] == "pairwise"
    assert set(doc["rules"]) == {"A,B", "A,C", "B,C"}
    parsed, _ = parse_swf_json(doc)
    assert isinstance(parsed, PairwiseRuleSwf)
    assert parsed.rules == swf.rules


def test_swf_json_is_deterministic():
    a = json.dumps(swf_to_json_dict(dictator_explicit(0, 3, 2, Domain.WEAK)), sort_keys=True)
    b = json.dumps(swf_to_json_dict(dictator_explicit(0, 3, 2, Domain.WEAK)), sort_keys=True)
    assert a == b


def test_swf_json_errors():
    with pytest.raises(SwfFormatError, match="kind"):
        parse_swf_json({"kind": "table", "m": 3, "n": 1, "domain": "weak"})
    with pytest.raises(SwfFormatError, match="missing"):
        parse_swf_json({"kind": "explicit", "m": 3, "n": 1})
    with pytest.raises(SwfFormatError, match="domain"):
        parse_swf_json({"kind": "explicit", "m": 3, "n": 1, "domain": "semi", "entries": []})
    with pytest.raises(SwfFormatError, match="invalid JSON"):
        parse_swf_json("{")

    base = {"kind": "pairwise", "m": 3, "n": 1, "domain": "weak"}
    with pytest.raises(SwfFormatError, match="canonical"):
        parse_swf_json({**base, "rules": {"B,A": []}})
    with pytest.raises(SwfFormatError, match="stance|INDIFFERENT"):
        parse_swf_json({**base, "rules": {"A,B": [[[[0], [], []], "MAYBE"]]}})
    with pytest.raises(SwfFormatError, match="duplicate tri-partition"):
        parse_swf_json(
            {
                **base,
                "rules": {"A,B": [[[[0], [], []], "FIRST"], [[[0], [], []], "SECOND"]]},
            }
        )

    dup = swf_to_json_dict(dictator_explicit(0, 3, 1, Domain.LINEAR))
    dup["entries"].append(dup["entries"][0])
    with pytest.raises(SwfFormatError, match="duplicate profile"):
        parse_swf_json(dup)


def test_verdict_of_weak_order_constructor():
    w = WeakOrder(((1,), (0, 2)))
    swf = constant_explicit(w, 1, Domain.LINEAR)
    for f in swf.domain_profiles():
        assert swf.verdict(f) == w
