import pytest
from hypothesis import given, settings

from lexrel.cg import (Atom, RuleParseError, RuleSet, apply_rules, match_reading, parse_rules)
from lexrel.corpus import Sense, tokenize
from lexrel.morph import Cohort, Reading, analyze_sentence, strip_labels

from .conftest import WORKED_RULES
from .strategies import rulesets, sentences

DECLS = 'SET IZE-ZERO-NOTGELGEN = (IZE ZERO NOTGELGEN) ;\nSET MOTA = ("mota") ;\n'


def test_parse_relator_rule():
    rs = parse_rules(DECLS + 'MAP (&ERLT-MOTA) TARGET ("mota") IF (-1 IZE-ZERO-NOTGELGEN) '
                             '(1 PUNT/PKOMA/KOMA/DEF_BUKA) ;')
    assert len(rs.rules) == 1
    rule = rs.rules[0]
    assert rule.label == "&ERLT-MOTA"
    assert rule.target.alternatives == ((Atom("mota", lemma=True),),)
    assert [(c.offset, c.negated) for c in rule.conditions] == [(-1, False), (1, False)]
    assert rule.conditions[0].tagset.alternatives == ((Atom("IZE"), Atom("ZERO"), Atom("NOTGELGEN")),)
    assert rule.conditions[1].tagset.alternatives == tuple(
        (Atom(t),) for t in ["PUNT", "PKOMA", "KOMA", "DEF_BUKA"])


def test_parse_related_term_rule():
    rs = parse_rules(DECLS + "MAP (&ERLZ-MOTA10) TARGET IZE-ZERO-NOTGELGEN IF (1 MOTA) "
                             "(2 PUNT/PKOMA/KOMA/DEF_BUKA) ;")
    assert len(rs.rules) == 1 and len(rs.rules[0].conditions) == 2
    assert rs.rules[0].conditions[0].tagset.alternatives == ((Atom("mota", lemma=True),),)


def test_parse_empty():
    assert len(parse_rules("").rules) == 0
    assert len(parse_rules("# nothing\n").rules) == 0


def test_sets_union_and_negation():
    rs = parse_rules('SET WORD = IZE ADJ (ADI ZERO) ;\nSET W2 = WORD "kide" ;\n'
                     "MAP (&ERLS-SYN1) TARGET W2 IF (NOT -1 WORD) (NOT 1 WORD) ;")
    assert rs.sets["W2"].alternatives == (
        (Atom("IZE"),), (Atom("ADJ"),), (Atom("ADI"), Atom("ZERO")), (Atom("kide", lemma=True),))
    assert all(c.negated for c in rs.rules[0].conditions)


@pytest.mark.parametrize("text, rule_index", [
    ("MAP (&ERLT-MOTA) TARGET MOTA ;", 1),
    ('SET A = IZE ;\nMAP (&ERLS-A) TARGET A ;\nMAP (&ERLS-B) TARGET A IF (1 NOPE) ;', 2),
])
def test_unresolved_set_name(text, rule_index):
    with pytest.raises(RuleParseError) as exc:
        parse_rules(text)
    assert exc.value.rule_index == rule_index
    assert "unresolved" in str(exc.value)


@pytest.mark.parametrize("text", [
    "SET A = IZE ;\nSET A = ADJ ;",
    "MAP (&ERLT-MOTA) TARGET IZE IF (0 IZE) ;",
    "MAP (ERLT-MOTA) TARGET IZE ;",
    "MAP (&ERLX-MOTA) TARGET IZE ;",
    "MAP (&ERLT-MOTA) TARGET IZE",
    "SELECT (IZE) ;",
    "SET E = ;",
])
def test_parse_errors(text):
    with pytest.raises(RuleParseError):
        parse_rules(text)


def test_shared_sets_are_predeclared():
    base = parse_rules(DECLS)
    rs = parse_rules("MAP (&ERLT-MOTA) TARGET MOTA IF (-1 IZE-ZERO-NOTGELGEN) ;", sets=base.sets)
    assert len(rs.rules) == 1


MOTA = Reading("mota", ("IZE", "ZERO", "NOTGELGEN"))


@pytest.mark.parametrize("alt, expected", [
    ((Atom("mota", lemma=True),), True),
    ((Atom("IZE"), Atom("ZERO"), Atom("NOTGELGEN")), True),
    ((Atom("GEN"),), False),
    ((Atom("IZE"), Atom("GEN")), False),
    ((Atom("sagar", lemma=True),), False),
])
def test_match_reading(alt, expected):
    assert match_reading(MOTA, alt) is expected


def test_worked_example_labels(lexicon, suffixes):
    cohorts = analyze_sentence(tokenize(Sense(1, "Udarearen antzeko sagar mota.")), lexicon, suffixes)
    out = apply_rules(cohorts, parse_rules(WORKED_RULES))
    assert [c.label for c in out] == [None, None, "&ERLZ-MOTA10", "&ERLT-MOTA", None]


def test_empty_ruleset_is_identity(lexicon, suffixes):
    cohorts = analyze_sentence(["mota", "."], lexicon, suffixes)
    assert apply_rules(cohorts, RuleSet({}, ())) == cohorts


def test_out_of_bounds_condition_fails(lexicon, suffixes):
    rs = parse_rules(WORKED_RULES)
    cohorts = analyze_sentence(["sagar", "mota"], lexicon, suffixes)
    assert [c.label for c in apply_rules(cohorts, rs)] == [None, None]
    # the same with the full stop present fires
    cohorts = analyze_sentence(["sagar", "mota", "."], lexicon, suffixes)
    assert [c.label for c in apply_rules(cohorts, rs)] == ["&ERLZ-MOTA10", "&ERLT-MOTA", None]


def test_out_of_bounds_satisfies_negated():
    rs = parse_rules("SET W = IZE ADJ ADI ;\nMAP (&ERLS-SYN1) TARGET ADI IF (NOT -1 W) (NOT 1 W) ;")
    alone = [Cohort("Bukatu", (Reading("bukatu", ("ADI", "ZERO")),), 0)]
    assert apply_rules(alone, rs)[0].label == "&ERLS-SYN1"


def test_label_only_on_matching_readings():
    rs = parse_rules("MAP (&ERLG-GEN1) TARGET GEN ;")
    c = Cohort("x", (Reading("a", ("IZE", "GEN")), Reading("b", ("ADJ",))), 0)
    out = apply_rules([c], rs)[0]
    assert [r.map_label for r in out.readings] == ["&ERLG-GEN1", None]


def test_first_rule_wins():
    rs = parse_rules("MAP (&ERLG-GEN1) TARGET IZE ;\nMAP (&ERLS-SYN1) TARGET IZE ;")
    out = apply_rules([Cohort("x", (Reading("a", ("IZE",)),), 0)], rs)
    assert out[0].label == "&ERLG-GEN1"


def brute_force(sentence, rs):
    """Firing predicate evaluated directly from its definition; index of the firing rule per cohort."""
    labels = [None] * len(sentence)
    for k, rule in enumerate(rs.rules):
        for i, c in enumerate(sentence):
            if labels[i] is not None:
                continue
            target_ok = any(any(all((a.value == r.lemma) if a.lemma else (a.value in r.tags)
                                    for a in alt) for alt in rule.target.alternatives)
                            for r in c.readings)
            conds_ok = True
            for cond in rule.conditions:
                j = i + cond.offset
                hit = 0 <= j < len(sentence) and any(cond.tagset.matches(r) for r in sentence[j].readings)
                conds_ok &= hit != cond.negated
            if target_ok and conds_ok:
                labels[i] = k
    return labels


def check_application(sentence, rs):
    once = apply_rules(sentence, rs)
    assert apply_rules(once, rs) == once
    fired = brute_force(sentence, rs)
    for c, k in zip(once, fired):
        labels = {r.map_label for r in c.readings if r.map_label}
        assert len(labels) <= 1
        if k is None:
            assert not labels
            continue
        rule = rs.rules[k]
        assert labels == {rule.label}
        for orig, r in zip(sentence[c.index].readings, c.readings):
            assert (r.map_label is not None) == rule.target.matches(orig)
    # readings never removed or reordered
    assert strip_labels(once) == strip_labels(sentence)


@settings(max_examples=200, deadline=None)
@given(sentences(), rulesets)
def test_apply_rules_properties(sentence, rs):
    check_application(sentence, rs)
