"""Ingestion -> analysis -> mapping -> extraction over a whole corpus."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from . import cg
from .corpus import Entry, POS_CODES, definition_sentences
from .derivation import AffixTable, DerivationRecord, load_affixes, segment_headword
from .morph import Cohort, Lexicon, SuffixTable, analyze_sentence, load_lexicon, load_suffixes
from .relations import RelationRecord, RelatorTable, extract_relations, load_relator_table

log = logging.getLogger(__name__)


def data_path(name: str) -> Path:
    return Path(str(resources.files("lexrel") / "data" / name))


DEFAULT_RULES = {pos: data_path(f"rules/{pos}.cg") for pos in POS_CODES}


@dataclass
class Resources:
    lexicon: Lexicon
    suffixes: SuffixTable
    relators: RelatorTable | None = None
    affixes: AffixTable | None = None
    rules: Mapping[str, cg.RuleSet] = field(default_factory=dict)

    @classmethod
    def load(cls, lexicon=None, suffixes=None, relators=None, affixes=None,
             rules: Mapping[str, Path] | None = None) -> "Resources":
        """Load resource files; anything not given falls back to the bundled fixtures."""
        rule_paths = DEFAULT_RULES if rules is None else rules
        return cls(
            lexicon=_from_file(load_lexicon, lexicon or data_path("lexicon.tsv")),
            suffixes=_from_file(load_suffixes, suffixes or data_path("suffixes.tsv")),
            relators=_from_file(load_relator_table, relators or data_path("relators.tsv")),
            affixes=_from_file(load_affixes, affixes or data_path("affixes.tsv")),
            rules={pos: _from_file(_load_rules, p) for pos, p in rule_paths.items()},
        )


def _load_rules(path) -> cg.RuleSet:
    return cg.parse_rules(Path(path).read_text(encoding="utf-8"), source_id=str(path))


def _from_file(loader, path):
    try:
        return loader(path)
    except ValueError as exc:
        # keep the file name in the one-line diagnostic
        raise ValueError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class SenseAnalysis:
    entry: Entry
    sense_number: int
    sentences: tuple[tuple[Cohort, ...], ...]


def analyze_entry(entry: Entry, res: Resources, mapped: bool = True) -> Iterator[SenseAnalysis]:
    ruleset = res.rules.get(entry.pos) if mapped else None
    for sense in entry.senses:
        sents = []
        for sent in definition_sentences(entry, sense):
            cohorts = analyze_sentence(sent, res.lexicon, res.suffixes)
            if ruleset is not None:
                cohorts = cg.apply_rules(cohorts, ruleset)
            sents.append(tuple(cohorts))
        yield SenseAnalysis(entry, sense.number, tuple(sents))


def analyze_corpus(entries: Iterable[Entry], res: Resources, mapped: bool = True) -> list[SenseAnalysis]:
    missing = sorted({e.pos for e in entries if e.pos not in res.rules}) if mapped else []
    for pos in missing:
        log.warning("no rule file for %s entries; they are analysed but not mapped", pos)
    return [sa for e in entries for sa in analyze_entry(e, res, mapped)]


def extract_sense(sa: SenseAnalysis, table: RelatorTable) -> list[RelationRecord]:
    out = []
    for i, sent in enumerate(sa.sentences):
        out.extend(extract_relations(sa.entry, sa.sense_number, sent, table, sentence_index=i))
    return out


def extract_corpus(analyses: Iterable[SenseAnalysis], table: RelatorTable) -> list[RelationRecord]:
    return [r for sa in analyses for r in extract_sense(sa, table)]


def derive_corpus(entries: Iterable[Entry], res: Resources) -> list[DerivationRecord]:
    if res.affixes is None:
        return []
    out = []
    for e in entries:
        rec = segment_headword(e.headword, e.pos, res.lexicon, res.affixes)
        if rec is not None:
            out.append(rec)
    return out
