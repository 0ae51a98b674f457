"""Constraint Grammar MAP rules: parsing and application.

Rule file syntax::

    # comment
    SET IZE-ZERO-NOTGELGEN = (IZE ZERO NOTGELGEN) ;
    SET MOTA = ("mota") ;
    MAP (&ERLT-MOTA) TARGET MOTA IF (-1 IZE-ZERO-NOTGELGEN) (1 PUNT/PKOMA/KOMA/DEF_BUKA) ;
    MAP (&ERLS-SYN1) TARGET ADI IF (NOT -1 WORD) (NOT 1 WORD) ;

A set is a union of alternatives; each alternative is a conjunction of
atoms. A bare name is a declared set if one exists, otherwise a tag from the
tag inventory. ``A/B`` is the union of ``A`` and ``B``; ``(A B)`` requires
both; ``"lemma"`` matches the reading's lemma.

Only fixed relative offsets are supported (no ``*`` scanning, no BARRIER).
An offset that falls outside the sentence satisfies only a negated
condition.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .morph import Cohort, Reading, is_known_tag

LABEL_RE = re.compile(r"&(ERLS|ERLG|ERLT|ERLZ)-[A-Z0-9]+$")
LABEL_KINDS = ("ERLS", "ERLG", "ERLT", "ERLZ")


class RuleParseError(ValueError):
    def __init__(self, message: str, rule_index: int | None = None, line: int | None = None):
        self.rule_index = rule_index
        self.line = line
        where = []
        if rule_index is not None:
            where.append(f"rule {rule_index}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class Atom:
    value: str
    lemma: bool = False

    def __str__(self):
        return f'"{self.value}"' if self.lemma else self.value


# an alternative is a conjunction of atoms
Alternative = tuple[Atom, ...]


@dataclass(frozen=True)
class TagSet:
    name: str
    alternatives: tuple[Alternative, ...]

    def __post_init__(self):
        if not self.alternatives or not all(self.alternatives):
            raise ValueError(f"set {self.name!r} needs at least one non-empty alternative")

    def matches(self, reading: Reading) -> bool:
        return any(match_reading(reading, alt) for alt in self.alternatives)

    def matches_cohort(self, cohort: Cohort) -> bool:
        return any(self.matches(r) for r in cohort.readings)


@dataclass(frozen=True)
class Condition:
    offset: int
    tagset: TagSet
    negated: bool = False

    def __post_init__(self):
        if self.offset == 0:
            raise ValueError("offset 0 is the target itself; use TARGET")


@dataclass(frozen=True)
class MapRule:
    label: str
    target: TagSet
    conditions: tuple[Condition, ...] = ()

    def __post_init__(self):
        if not LABEL_RE.match(self.label):
            raise ValueError(f"bad map label {self.label!r}; expected &KIND-ID with KIND in {LABEL_KINDS}")

    @property
    def kind(self) -> str:
        return self.label[1:5]

    @property
    def label_id(self) -> str:
        return self.label[6:]


@dataclass(frozen=True)
class RuleSet:
    sets: Mapping[str, TagSet]
    rules: tuple[MapRule, ...]
    source_id: str = ""

    def __len__(self):
        return len(self.rules)


def match_reading(r: Reading, alt: Alternative) -> bool:
    tags = r.tagset
    return all((a.value == r.lemma) if a.lemma else (a.value in tags) for a in alt)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r'\s+|#[^\n]*|"(?P<q>[^"\n]*)"|(?P<p>[()=;])|(?P<w>[^\s()=;"#]+)')


@dataclass(frozen=True)
class _Tok:
    kind: str  # "q" quoted, "p" punctuation, "w" word
    text: str
    line: int


def _lex(text: str) -> list[_Tok]:
    out = []
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise RuleParseError(f"unexpected character {text[pos]!r}", line=line)
        for kind in ("q", "p", "w"):
            if m.group(kind) is not None:
                out.append(_Tok(kind, m.group(kind), line))
                break
        line += m.group(0).count("\n")
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, sets: Mapping[str, TagSet] | None, source_id: str):
        self.toks = _lex(text)
        self.i = 0
        self.sets: dict[str, TagSet] = dict(sets or {})
        self.rules: list[MapRule] = []
        self.source_id = source_id

    def error(self, msg, tok=None):
        tok = tok or (self.toks[self.i] if self.i < len(self.toks) else None)
        idx = len(self.rules) + 1 if self._in_rule else None
        raise RuleParseError(msg, rule_index=idx, line=tok.line if tok else None)

    _in_rule = False

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, text=None):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input" + (f", expected {text!r}" if text else ""))
        if text is not None and tok.text != text:
            self.error(f"expected {text!r}, got {tok.text!r}", tok)
        self.i += 1
        return tok

    def parse(self) -> RuleSet:
        while self.peek() is not None:
            tok = self.take()
            if tok.text == "SET" and tok.kind == "w":
                self._in_rule = False
                self.parse_set()
            elif tok.text == "MAP" and tok.kind == "w":
                self._in_rule = True
                self.parse_map()
                self._in_rule = False
            else:
                self.error(f"expected SET or MAP, got {tok.text!r}", tok)
        return RuleSet(dict(self.sets), tuple(self.rules), self.source_id)

    # name or quoted lemma, possibly slash-joined -> alternatives
    def resolve_name(self, name: str, tok) -> tuple[Alternative, ...]:
        if name in self.sets:
            return self.sets[name].alternatives
        if is_known_tag(name):
            return ((Atom(name),),)
        self.error(f"unresolved set name {name!r}", tok)

    def resolve_word(self, tok) -> tuple[Alternative, ...]:
        alts: list[Alternative] = []
        for part in tok.text.split("/"):
            if not part:
                self.error(f"empty union member in {tok.text!r}", tok)
            alts.extend(self.resolve_name(part, tok))
        return tuple(dict.fromkeys(alts))

    def parse_group(self) -> Alternative:
        """``( atom atom ... )`` as one conjunction; nested set names must be single-alternative."""
        self.take("(")
        atoms: list[Atom] = []
        while True:
            tok = self.take()
            if tok.kind == "p" and tok.text == ")":
                break
            if tok.kind == "q":
                atoms.append(Atom(tok.text, lemma=True))
            elif tok.kind == "w":
                alts = self.resolve_name(tok.text, tok)
                if len(alts) != 1:
                    self.error(f"set {tok.text!r} is a union and cannot appear inside a conjunction", tok)
                atoms.extend(alts[0])
            else:
                self.error(f"unexpected {tok.text!r} in conjunction", tok)
        if not atoms:
            self.error("empty conjunction")
        return tuple(dict.fromkeys(atoms))

    def parse_setexpr(self, name: str) -> TagSet:
        """One set expression: a bare/slashed name, a quoted lemma or a group."""
        tok = self.peek()
        if tok is None:
            self.error("expected a set expression")
        if tok.kind == "p" and tok.text == "(":
            return TagSet(name, (self.parse_group(),))
        self.take()
        if tok.kind == "q":
            return TagSet(name, ((Atom(tok.text, lemma=True),),))
        if tok.kind == "w":
            return TagSet(name if name else tok.text, self.resolve_word(tok))
        self.error(f"expected a set expression, got {tok.text!r}", tok)

    def parse_set(self):
        name_tok = self.take()
        if name_tok.kind != "w":
            self.error("expected set name", name_tok)
        name = name_tok.text
        if name in self.sets:
            self.error(f"duplicate set name {name!r}", name_tok)
        self.take("=")
        alts: list[Alternative] = []
        while True:
            tok = self.peek()
            if tok is None:
                self.error("unterminated SET, expected ';'")
            if tok.kind == "p" and tok.text == ";":
                self.take()
                break
            alts.extend(self.parse_setexpr(name).alternatives)
        if not alts:
            self.error(f"set {name!r} is empty", name_tok)
        self.sets[name] = TagSet(name, tuple(dict.fromkeys(alts)))

    def parse_map(self):
        self.take("(")
        label_tok = self.take()
        self.take(")")
        label = label_tok.text
        if not LABEL_RE.match(label):
            self.error(f"bad map label {label!r}", label_tok)
        self.take("TARGET")
        target = self.parse_setexpr("")
        conditions = []
        tok = self.peek()
        if tok is not None and tok.kind == "w" and tok.text == "IF":
            self.take()
            while self.peek() is not None and self.peek().text == "(":
                conditions.append(self.parse_condition())
        self.take(";")
        self.rules.append(MapRule(label, target, tuple(conditions)))

    def parse_condition(self) -> Condition:
        self.take("(")
        negated = False
        tok = self.take()
        if tok.kind == "w" and tok.text == "NOT":
            negated = True
            tok = self.take()
        if tok.kind != "w" or not re.fullmatch(r"[+-]?\d+", tok.text):
            self.error(f"expected relative offset, got {tok.text!r}", tok)
        offset = int(tok.text)
        if offset == 0:
            self.error("offset 0 is not allowed in a condition", tok)
        tagset = self.parse_setexpr("")
        self.take(")")
        return Condition(offset, tagset, negated)


def parse_rules(text: str, source_id: str = "", sets: Mapping[str, TagSet] | None = None) -> RuleSet:
    """Parse a rule file. `sets` pre-declares sets shared across files."""
    return _Parser(text, sets, source_id).parse()


# -- application ---------------------------------------------------------------

def _fires(rule: MapRule, sentence: Sequence[Cohort], i: int) -> bool:
    for cond in rule.conditions:
        j = i + cond.offset
        if 0 <= j < len(sentence):
            hit = cond.tagset.matches_cohort(sentence[j])
        else:
            hit = False
        if hit == cond.negated:
            return False
    return True


def apply_rules(sentence: Sequence[Cohort], rs: RuleSet) -> list[Cohort]:
    """Apply every MAP rule once, in file order, left to right.

    A cohort that already carries a label is never relabelled.
    """
    out = list(sentence)
    for rule in rs.rules:
        for i, cohort in enumerate(out):
            if cohort.label is not None:
                continue
            if not rule.target.matches_cohort(cohort):
                continue
            # conditions look at the original readings; labels are not tags
            if not _fires(rule, out, i):
                continue
            readings = tuple(
                replace(r, map_label=rule.label) if rule.target.matches(r) else r
                for r in cohort.readings
            )
            out[i] = replace(cohort, readings=readings)
    return out


def labels(sentence: Iterable[Cohort]) -> list[tuple[int, str]]:
    return [(c.index, c.label) for c in sentence if c.label is not None]
