"""Lexicon-driven morphological analysis with ambiguous readings.

Every token is segmented as ``stem + suffix`` against an inflectional suffix
table. All segmentations whose stem is a lexicon lemma of a compatible POS
are kept; no reading is ever pruned, since the mapping rules work on
ambiguous cohorts.

Tag inventory
-------------
==========  ===============================================
IZE         noun
ADJ         adjective
ADI         verb
IZE-ADI     verbal noun
PUNT        punctuation (POS slot)
ARR         common (lexical)
DEK         declension suffix present
GEN         genitive
DAT         dative
INS         instrumental
ABS         absolutive
ZERO        no overt suffix
NUMS        singular
MUGM        definite
AORG        animate/organic (lexical)
NOTGELGEN   neither locative-genitive nor genitive
IZLG        noun-modifier (``-ko``) form
ADLG        adverbial form
GUESS       unknown word, guessed reading
HAS_MAI     capitalised, case-folded sentence-initial token
PUNT_PUNT   full stop
PKOMA       semicolon
KOMA        comma
DEF_BUKA    definition end
IZL         adjective subclass (lexical)
==========  ===============================================

Lexical sense pointers of the form ``S:nnn`` are carried through from the
lexicon file untouched.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import TokenizedSentence

POS_TAGS = ("IZE", "ADJ", "ADI", "IZE-ADI", "PUNT")
TAG_INVENTORY = frozenset(POS_TAGS + (
    "ARR", "DEK", "GEN", "DAT", "INS", "ABS", "ZERO", "NUMS", "MUGM", "AORG",
    "NOTGELGEN", "GUESS", "HAS_MAI", "PUNT_PUNT", "PKOMA", "KOMA", "DEF_BUKA",
    "IZLG", "ADLG", "IZL",
))
SENSE_POINTER = re.compile(r"S:\d+$")

ZERO_TAGS = ("ZERO", "ABS", "NOTGELGEN")
PUNCT_TAGS = {".": "PUNT_PUNT", ";": "PKOMA", ",": "KOMA"}

# entry POS code -> lexicon POS tag
POS_TAG_OF = {"noun": "IZE", "adj": "ADJ", "verb": "ADI"}
POS_CODE_OF = {v: k for k, v in POS_TAG_OF.items()}


def is_known_tag(tag: str) -> bool:
    return tag in TAG_INVENTORY or bool(SENSE_POINTER.match(tag))


@dataclass(frozen=True)
class Reading:
    lemma: str
    tags: tuple[str, ...]
    map_label: str | None = None

    def __post_init__(self):
        pos = [t for t in self.tags if t in POS_TAGS]
        if len(pos) != 1:
            raise ValueError(f"reading {self.lemma!r} needs exactly one POS tag, got {pos}")
        if len(set(self.tags)) != len(self.tags):
            raise ValueError(f"duplicate tags in {self.tags}")
        if self.map_label is not None and not self.map_label.startswith("&"):
            raise ValueError(f"map label must start with '&': {self.map_label!r}")

    @property
    def pos(self) -> str:
        return next(t for t in self.tags if t in POS_TAGS)

    @property
    def tagset(self) -> frozenset[str]:
        return frozenset(self.tags)

    def sort_key(self):
        return (self.lemma, tuple(sorted(self.tags)))


@dataclass(frozen=True)
class Cohort:
    surface: str
    readings: tuple[Reading, ...]
    index: int

    def __post_init__(self):
        if not self.readings:
            raise ValueError(f"cohort {self.surface!r} has no readings")

    @property
    def label(self) -> str | None:
        for r in self.readings:
            if r.map_label:
                return r.map_label
        return None

    def labeled_readings(self) -> list[Reading]:
        return [r for r in self.readings if r.map_label]


@dataclass(frozen=True)
class Suffix:
    form: str
    tags: tuple[str, ...]
    attaches_to: frozenset[str]


@dataclass
class Lexicon:
    """lemma -> {POS tag: extra lexical tags}"""
    entries: dict[str, dict[str, tuple[str, ...]]] = field(default_factory=dict)

    def add(self, lemma: str, pos: str, extra: Iterable[str] = ()):
        if pos not in POS_TAGS:
            raise ValueError(f"unknown POS tag {pos!r} for lemma {lemma!r}")
        slot = self.entries.setdefault(lemma, {})
        if pos in slot:
            raise ValueError(f"duplicate lexicon entry ({lemma}, {pos})")
        slot[pos] = tuple(extra)

    def lookup(self, lemma: str) -> Mapping[str, tuple[str, ...]]:
        return self.entries.get(lemma, {})

    def __contains__(self, lemma):
        return lemma in self.entries

    def __len__(self):
        return len(self.entries)


class SuffixTable:
    def __init__(self, suffixes: Iterable[Suffix] = ()):
        seen = set()
        items = []
        for suf in suffixes:
            if not suf.form:
                raise ValueError("empty suffix")
            for pos in suf.attaches_to:
                if (suf.form, pos) in seen:
                    raise ValueError(f"duplicate suffix ({suf.form}, {pos})")
                seen.add((suf.form, pos))
            items.append(suf)
        # longest first; stable for equal lengths
        self.suffixes = tuple(sorted(items, key=lambda s: -len(s.form)))

    def __iter__(self):
        return iter(self.suffixes)

    def __len__(self):
        return len(self.suffixes)


def _data_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line.rstrip("\r\n").split("\t")


def _csv(field: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in field.split(",") if t.strip())


def parse_lexicon(text: str) -> Lexicon:
    lex = Lexicon()
    for lineno, cols in _data_lines(text):
        if len(cols) < 2:
            raise ValueError(f"lexicon line {lineno}: expected lemma<TAB>POS[<TAB>tags]")
        try:
            lex.add(cols[0].strip(), cols[1].strip(), _csv(cols[2]) if len(cols) > 2 else ())
        except ValueError as exc:
            raise ValueError(f"lexicon line {lineno}: {exc}") from None
    return lex


def parse_suffixes(text: str) -> SuffixTable:
    items = []
    for lineno, cols in _data_lines(text):
        if len(cols) != 3:
            raise ValueError(f"suffix line {lineno}: expected suffix<TAB>tags<TAB>attachesTo")
        form = cols[0].strip().lstrip("-")
        attaches = frozenset(_csv(cols[2]))
        bad = attaches - set(POS_TAGS)
        if bad:
            raise ValueError(f"suffix line {lineno}: unknown POS {sorted(bad)}")
        items.append(Suffix(form, _csv(cols[1]), attaches))
    try:
        return SuffixTable(items)
    except ValueError as exc:
        raise ValueError(f"suffix table: {exc}") from None


def load_lexicon(path) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def load_suffixes(path) -> SuffixTable:
    return parse_suffixes(Path(path).read_text(encoding="utf-8"))


def _merge(*groups: Iterable[str]) -> tuple[str, ...]:
    out = []
    for group in groups:
        for t in group:
            if t not in out:
                out.append(t)
    return tuple(out)


def analyze_token(surface: str, lex: Lexicon, suf: SuffixTable,
                  fold_case: bool = True) -> list[Reading]:
    """All readings of one surface token.

    With `fold_case`, a capitalised token is looked up lower-cased and its
    readings get ``HAS_MAI``; :func:`analyze_sentence` only folds the first
    token.
    """
    if not surface:
        raise ValueError("empty token")
    if surface in PUNCT_TAGS:
        return [Reading(surface, ("PUNT", PUNCT_TAGS[surface]))]

    form = surface
    flags: tuple[str, ...] = ()
    if fold_case and surface[0].isupper():
        form = surface.lower()
        flags = ("HAS_MAI",)

    readings = set()
    for pos, extra in lex.lookup(form).items():
        readings.add(Reading(form, _merge((pos,), extra, ZERO_TAGS, flags)))
    for s in suf:
        if len(form) <= len(s.form) or not form.endswith(s.form):
            continue
        stem = form[: -len(s.form)]
        for pos, extra in lex.lookup(stem).items():
            if pos in s.attaches_to:
                readings.add(Reading(stem, _merge((pos,), extra, s.tags, flags)))
    if not readings:
        return [Reading(surface, _merge(("IZE", "GUESS"), flags))]
    return sorted(readings, key=Reading.sort_key)


def analyze_sentence(tokens: TokenizedSentence | Iterable[str], lex: Lexicon,
                     suf: SuffixTable) -> list[Cohort]:
    if not isinstance(tokens, TokenizedSentence):
        tokens = TokenizedSentence(tuple(tokens))
    return [
        Cohort(tok, tuple(analyze_token(tok, lex, suf, fold_case=(i == 0))), i)
        for i, tok in enumerate(tokens.tokens)
    ]


def strip_labels(cohorts: Iterable[Cohort]) -> list[Cohort]:
    return [replace(c, readings=tuple(replace(r, map_label=None) for r in c.readings))
            for c in cohorts]


def format_cohorts(cohorts: Iterable[Cohort], headword: str | None = None,
                   pos: str | None = None) -> str:
    """Render cohorts in the CG stream style::

        "<sagar>"
                "sagar" IZE ARR ZERO ABS NOTGELGEN &ERLZ-MOTA10
    """
    lines = []
    if headword is not None:
        lines.append(f"/<@@headword{headword}>/<ID>/")
    if pos is not None:
        lines.append(f"/<@@POS{pos}>/<ID>/")
    for c in cohorts:
        surface = "$" + c.surface if c.surface in PUNCT_TAGS else c.surface
        lines.append(f'"<{surface}>"')
        for r in c.readings:
            parts = [f'"{r.lemma}"', *r.tags]
            if r.map_label:
                parts.append(r.map_label)
            lines.append("\t" + " ".join(parts))
    return "\n".join(lines) + "\n"
