"""Dictionary entries and definition tokenization.

Entries are read from a flat pipe-delimited interchange format, one sense
per line::

    # headword|pos|sense|definition[|example...]
    gibelzorrotz|noun|1|Udarearen antzeko sagar mota.

Consecutive lines sharing headword and POS form one entry.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

log = logging.getLogger(__name__)

POS_CODES = ("noun", "adj", "verb")
PUNCTUATION = (".", ";", ",")


class ParseError(ValueError):
    """A malformed interchange record."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Diagnostic:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


@dataclass(frozen=True)
class Sense:
    number: int
    definition: str
    examples: tuple[str, ...] = ()

    def __post_init__(self):
        if self.number < 1:
            raise ValueError(f"sense number must be positive, got {self.number}")
        if not self.definition.strip():
            raise ValueError("empty definition")


@dataclass(frozen=True)
class Entry:
    headword: str
    pos: str
    senses: tuple[Sense, ...] = ()

    def __post_init__(self):
        if not self.headword.strip():
            raise ValueError("empty headword")
        if self.pos not in POS_CODES:
            raise ValueError(f"unknown POS code {self.pos!r}")
        numbers = [s.number for s in self.senses]
        if len(set(numbers)) != len(numbers):
            raise ValueError(f"{self.headword}: duplicate sense numbers {numbers}")
        if numbers and min(numbers) != 1:
            raise ValueError(f"{self.headword}: sense numbering must start at 1")

    def sense(self, number: int) -> Sense:
        for s in self.senses:
            if s.number == number:
                return s
        raise KeyError(number)


@dataclass(frozen=True)
class TokenizedSentence:
    tokens: tuple[str, ...]
    source: tuple[str, int] = ("", 0)

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("a sentence needs at least one token")

    def __len__(self):
        return len(self.tokens)


def parse_entries(stream: str | Iterable[str],
                  diagnostics: list[Diagnostic] | None = None) -> list[Entry]:
    """Parse interchange text into entries, in input order.

    Malformed records raise :class:`ParseError`. Records with an unknown POS
    code are skipped; a :class:`Diagnostic` is appended to `diagnostics` when
    given, and logged either way.
    """
    lines = stream.splitlines() if isinstance(stream, str) else stream
    entries: list[Entry] = []
    # (headword, pos, first line number, senses)
    current: list | None = None

    def close():
        if current is None:
            return
        headword, pos, lineno, senses = current
        try:
            entries.append(Entry(headword, pos, tuple(senses)))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) < 4:
            raise ParseError(f"expected at least 4 '|' separated fields, got {len(fields)}", lineno)
        headword, pos, number, definition, *examples = fields
        if not headword:
            raise ParseError("empty headword", lineno)
        if pos not in POS_CODES:
            diag = Diagnostic(lineno, f"unknown POS code {pos!r}; record skipped")
            log.warning("%s", diag)
            if diagnostics is not None:
                diagnostics.append(diag)
            continue
        if not number.isdigit() or int(number) < 1:
            raise ParseError(f"sense number must be a positive integer, got {number!r}", lineno)
        if not definition:
            raise ParseError("empty definition", lineno)
        sense = Sense(int(number), definition, tuple(e for e in examples if e))

        if current is not None and current[0] == headword and current[1] == pos:
            if any(s.number == sense.number for s in current[3]):
                raise ParseError(f"duplicate sense number {sense.number} for {headword!r}", lineno)
            current[3].append(sense)
        else:
            close()
            current = [headword, pos, lineno, [sense]]
    close()
    return entries


def serialize_entries(entries: Iterable[Entry]) -> str:
    out = []
    for entry in entries:
        for sense in entry.senses:
            fields = [entry.headword, entry.pos, str(sense.number), sense.definition, *sense.examples]
            out.append("|".join(fields) + "\n")
    return "".join(out)


def _split_word(word: str) -> list[str]:
    trail = []
    while word and word[-1] in PUNCTUATION:
        trail.append(word[-1])
        word = word[:-1]
    return ([word] if word else []) + trail[::-1]


def tokenize(sense: Sense, headword: str = "") -> TokenizedSentence:
    """Split a definition on whitespace, detaching trailing ``. ; ,``."""
    tokens = []
    for word in sense.definition.split():
        tokens.extend(_split_word(word))
    return TokenizedSentence(tuple(tokens), (headword, sense.number))


def split_sentences(sentence: TokenizedSentence) -> list[TokenizedSentence]:
    """Break a tokenized definition after every full stop."""
    out, buf = [], []
    for tok in sentence.tokens:
        buf.append(tok)
        if tok == ".":
            out.append(TokenizedSentence(tuple(buf), sentence.source))
            buf = []
    if buf:
        out.append(TokenizedSentence(tuple(buf), sentence.source))
    return out


def definition_sentences(entry: Entry, sense: Sense) -> list[TokenizedSentence]:
    return split_sentences(tokenize(sense, entry.headword))


def detokenize(tokens: Iterable[str]) -> str:
    text = ""
    for tok in tokens:
        if not text or tok in PUNCTUATION:
            text += tok
        else:
            text += " " + tok
    return text
