import random

import pytest

from invquot.branch import enumerate_branch_configs
from invquot.classify import classify
from invquot.profile import quotient_profile
from invquot.rules import (BRANCH_RULES, ENRIQUES_RULES, ExclusionRule, Provenance, RuleError, Scope, Stage,
                           all_rules, apply_exclusions, builtin_rules, find_rule, parse_rules, parse_scope)
from conftest import all_cells


def cell(k, kw2):
    return classify(7, k, kw2).section(k).cell(kw2)


def test_mqs_excludes_one_k9_config():
    c = cell(9, -2)
    assert len(c.generated) == 11 and len(c.admitted) == 10
    assert [(str(v.config), v.matched) for v in c.excluded] == [("(5,6)+(0,-4)+(0,-4)", ("MQS-2.1.1",))]


def test_lemma_excludes_one_k7_config():
    c = cell(7, 0)
    assert len(c.generated) == 3
    assert [(str(v.config), v.matched) for v in c.excluded] == [("(3,2)+(0,-4)", ("LEMMA-K7",))]


def test_no_rules_admit_everything():
    configs = enumerate_branch_configs(quotient_profile(7, 9), -2)
    assert all(v.admitted for v in apply_exclusions(configs, []))


def test_numeric_rules_never_fire():
    numeric = [r for r in all_rules() if r.provenance is Provenance.NUMERIC]
    assert len(numeric) >= 5 and not any(r.active for r in numeric)
    for ks2, k, kw2 in all_cells(numeric_range=True):
        configs = enumerate_branch_configs(quotient_profile(ks2, k), kw2)
        assert all(v.admitted for v in apply_exclusions(configs, numeric))


def test_idempotent():
    configs = enumerate_branch_configs(quotient_profile(7, 9), -2)
    once = [v.config for v in apply_exclusions(configs, builtin_rules()) if v.admitted]
    twice = [v.config for v in apply_exclusions(once, builtin_rules()) if v.admitted]
    assert once == twice


def test_order_independent():
    configs = enumerate_branch_configs(quotient_profile(7, 9), -2)
    rules = builtin_rules() + list(ENRIQUES_RULES)
    base = apply_exclusions(configs, rules)
    rng = random.Random(7)
    for _ in range(10):
        shuffled = rules[:]
        rng.shuffle(shuffled)
        assert apply_exclusions(configs, shuffled) == base


def test_geometric_rules_scoped_to_k2_7():
    for rule in all_rules():
        if rule.provenance is Provenance.GEOMETRIC:
            assert rule.scope.ks2 == 7 and rule.citation
    for ks2 in (1, 2, 3, 4, 5, 6, 8, 9):
        cl = classify(ks2)
        assert cl.numeric_only
        assert cl.geometric_exclusions() == []
        assert cl.geometric_profile_rules() == []


def test_scope_outside_cell_never_fires():
    # MQS-2.1.1 pattern transplanted to another cell must not match
    rule = find_rule("MQS-2.1.1")
    for ks2, k, kw2 in all_cells(numeric_range=True):
        if (ks2, k, kw2) == (7, 9, -2):
            continue
        for c in enumerate_branch_configs(quotient_profile(ks2, k), kw2):
            assert not rule.matches(c)


def test_geometric_rule_needs_citation():
    with pytest.raises(RuleError):
        ExclusionRule("X", Provenance.GEOMETRIC, Stage.BRANCH, Scope(), "(1,-2)", "  ")


def test_find_rule():
    assert find_rule("LEMMA-K7") is BRANCH_RULES[1]
    with pytest.raises(KeyError):
        find_rule("NOPE")


def test_duplicate_ids_rejected():
    with pytest.raises(RuleError):
        all_rules([BRANCH_RULES[0]])


def test_parse_scope():
    assert parse_scope("*") == Scope()
    assert parse_scope("ks2=7, k=9,kw2=-2") == Scope(7, 9, -2)
    assert str(Scope(7, 9, None)) == "ks2=7,k=9"
    for bad in ("k2=7", "k", "k=nine"):
        with pytest.raises(RuleError):
            parse_scope(bad)


RULE_FILE = """
# drop one more k = 9 configuration
X-1 | geometric | ks2=7,k=9,kw2=-2 | (1,-2)+(3,0) | hypothetical | for testing
X-2 | numeric | * | (0,-4) | arithmetic
"""


def test_parse_rules_and_apply():
    rules = parse_rules(RULE_FILE)
    assert [r.id for r in rules] == ["X-1", "X-2"]
    assert rules[0].pattern == "(3,0)+(1,-2)"
    assert rules[1].note == ""
    c = classify(7, 9, -2, extra_rules=rules).section(9).cell(-2)
    assert len(c.admitted) == 9
    assert ("(3,0)+(1,-2)", ("X-1",)) in [(str(v.config), v.matched) for v in c.excluded]


@pytest.mark.parametrize("text, message", [
    ("A | geometric | * | (1,-2)", "fields"),
    ("A | sideways | * | (1,-2) | c", "provenance"),
    ("A | geometric | * | (1,-2) |  ", "citation"),
    ("A | numeric | k=x | (1,-2) | c", "scope"),
    ("A | numeric | * | (1,2 | c", "parse"),
    (" | numeric | * | (1,-2) | c", "empty"),
])
def test_parse_rules_errors(text, message):
    with pytest.raises(RuleError, match=message):
        parse_rules(text)
