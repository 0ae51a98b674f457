import pytest
from hypothesis import given, settings, strategies as st

from lexrel.derivation import Affix, AffixTable, parse_affixes, segment_headword
from lexrel.morph import Lexicon, POS_CODE_OF


def test_alaitsu(lexicon, resources):
    rec = segment_headword("alaitsu", "adj", lexicon, resources.affixes)
    assert (rec.root, rec.affix, rec.affix_position) == ("alai", "tsu", "suffix")


def test_no_affix(lexicon, resources):
    assert segment_headword("mota", "noun", lexicon, resources.affixes) is None


def test_verbal_prefix_rejects_noun_root():
    lex = Lexicon()
    lex.add("etxe", "IZE")
    lex.add("egin", "ADI")
    affixes = AffixTable([Affix("des", "prefix", "verb", frozenset({"verb"}))])
    assert segment_headword("desetxe", "verb", lex, affixes) is None
    rec = segment_headword("desegin", "verb", lex, affixes)
    assert (rec.root, rec.root_pos, rec.affix_label) == ("egin", "verb", "des-")


def test_verbal_affix_must_take_verb_roots():
    with pytest.raises(ValueError):
        Affix("arazi", "suffix", "verb", None)
    with pytest.raises(ValueError):
        Affix("des", "prefix", "verb", frozenset({"verb", "noun"}))


def test_bundled_affix_inventory(resources):
    counts = {}
    for a in resources.affixes:
        counts[(a.produces_pos, a.position)] = counts.get((a.produces_pos, a.position), 0) + 1
    assert counts == {("noun", "suffix"): 8, ("adj", "suffix"): 3, ("verb", "suffix"): 1, ("verb", "prefix"): 1}


def test_longest_suffix_first():
    lex = Lexicon()
    lex.add("gar", "IZE")
    lex.add("ga", "IZE")
    affixes = parse_affixes("ri\tsuffix\tnoun\tANY\nrri\tsuffix\tnoun\tANY\n")
    assert segment_headword("garri", "noun", lex, affixes).affix == "rri"


def test_suffixes_before_prefixes():
    lex = Lexicon()
    lex.add("xa", "IZE")
    lex.add("ax", "IZE")
    affixes = parse_affixes("a\tprefix\tnoun\tANY\na\tsuffix\tnoun\tANY\n")
    assert segment_headword("axa", "noun", lex, affixes).affix_position == "suffix"


def test_duplicate_affix_rejected():
    with pytest.raises(ValueError):
        parse_affixes("tsu\tsuffix\tadj\tANY\ntsu\tsuffix\tnoun\tANY\n")


pieces = st.sampled_from(["a", "al", "ai", "tsu", "des", "gin", "e", "ta", "sun"])
pos_codes = st.sampled_from(["noun", "adj", "verb"])


@st.composite
def fixtures(draw):
    lex = Lexicon()
    for lemma, tag in draw(st.dictionaries(
            st.tuples(st.lists(pieces, min_size=1, max_size=2).map("".join),
                      st.sampled_from(["IZE", "ADJ", "ADI"])), st.none(), max_size=8)):
        lex.add(lemma, tag)
    affixes = {}
    for form, position, produces in draw(st.lists(st.tuples(pieces, st.sampled_from(["suffix", "prefix"]), pos_codes), max_size=6)):
        if produces == "verb":
            roots = frozenset({"verb"})
        else:
            roots = draw(st.one_of(st.none(), st.sets(pos_codes, min_size=1).map(frozenset)))
        affixes.setdefault((form, position), Affix(form, position, produces, roots))
    word = draw(st.lists(pieces, min_size=2, max_size=3).map("".join))
    return lex, AffixTable(affixes.values()), word, draw(pos_codes)


def _exhaustive(word, pos, lex, affixes):
    """All valid single-affix analyses, by checking every affix against every root."""
    found = []
    for a in affixes:
        if a.produces_pos != pos:
            continue
        for lemma, slot in lex.entries.items():
            glued = lemma + a.form if a.position == "suffix" else a.form + lemma
            if glued != word:
                continue
            for tag in slot:
                if a.root_pos is None or POS_CODE_OF[tag] in a.root_pos:
                    found.append((a, lemma, POS_CODE_OF[tag]))
    return found


@settings(max_examples=300, deadline=None)
@given(fixtures())
def test_segmentation_properties(fx):
    lex, affixes, word, pos = fx
    rec = segment_headword(word, pos, lex, affixes)
    valid = _exhaustive(word, pos, lex, affixes)
    if rec is None:
        assert valid == []
        return
    rebuilt = rec.root + rec.affix if rec.affix_position == "suffix" else rec.affix + rec.root
    assert rebuilt == word
    affix = next(a for a in affixes if (a.form, a.position) == (rec.affix, rec.affix_position))
    assert affix.root_pos is None or rec.root_pos in affix.root_pos
    assert (affix, rec.root, rec.root_pos) in valid
    # suffixes beat prefixes, then the longer affix wins
    best = min(valid, key=lambda v: (v[0].position != "suffix", -len(v[0].form)))
    assert (best[0].position, len(best[0].form)) == (rec.affix_position, len(rec.affix))
    assert segment_headword(word, pos, lex, affixes) == rec
