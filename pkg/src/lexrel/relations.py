"""From labelled cohorts to semantic relation records."""
from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import POS_CODES, Entry
from .morph import Cohort

log = logging.getLogger(__name__)

KINDS = ("SYN", "GEN", "RELATOR", "DERIV")
LABEL_KIND = {"ERLS": "SYN", "ERLG": "GEN", "ERLZ": "RELATOR"}
GENUS_TYPES = ("Hypernymy", "Taxonomy")
UNKNOWN = "UNKNOWN"

_VARIANT = re.compile(r"\d+$")


def strip_variant(label_id: str) -> str:
    """Drop the trailing rule-variant digits of a label ID (``MOTA10`` -> ``MOTA``)."""
    if not label_id:
        raise ValueError("empty label id")
    base = _VARIANT.sub("", label_id)
    if not base:
        raise ValueError(f"malformed label id {label_id!r}: no non-digit characters")
    return base


def split_label(label: str) -> tuple[str, str]:
    """``&ERLZ-MOTA10`` -> ``("ERLZ", "MOTA10")``"""
    if not label.startswith("&") or "-" not in label:
        raise ValueError(f"malformed label {label!r}")
    kind, _, ident = label[1:].partition("-")
    return kind, ident


@dataclass(frozen=True)
class RelatorRow:
    types: tuple[str, ...]
    related_pos: str


class RelatorTable:
    def __init__(self, rows: dict[tuple[str, str], RelatorRow] | None = None):
        self.rows = dict(rows or {})
        for key, row in self.rows.items():
            if not row.types:
                raise ValueError(f"relator {key} has no relation types")

    def lookup(self, relator_id: str, headword_pos: str) -> RelatorRow | None:
        return self.rows.get((relator_id, headword_pos))

    def __contains__(self, key):
        return key in self.rows

    def __len__(self):
        return len(self.rows)


def parse_relator_table(text: str) -> RelatorTable:
    rows = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 4:
            raise ValueError(f"relator line {lineno}: expected 4 tab-separated fields")
        rid, hpos, rpos, types = cols
        if hpos not in POS_CODES or rpos not in POS_CODES:
            raise ValueError(f"relator line {lineno}: bad POS in {hpos!r}/{rpos!r}")
        if strip_variant(rid) != rid:
            raise ValueError(f"relator line {lineno}: id {rid!r} has trailing digits")
        key = (rid, hpos)
        if key in rows:
            raise ValueError(f"relator line {lineno}: duplicate row {key}")
        tlist = tuple(t.strip() for t in types.split(",") if t.strip())
        if not tlist:
            raise ValueError(f"relator line {lineno}: no relation types")
        rows[key] = RelatorRow(tlist, rpos)
    return RelatorTable(rows)


def load_relator_table(path) -> RelatorTable:
    return parse_relator_table(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class RelationRecord:
    headword: str
    pos: str
    sense_number: int
    kind: str
    candidate_types: tuple[str, ...]
    related_lemma: str
    relator_id: str | None = None
    rule_label: str | None = None
    evidence: tuple[int, tuple[int, ...]] = (0, ())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown relation kind {self.kind!r}")
        if not self.candidate_types:
            raise ValueError("candidate_types must not be empty")
        if self.kind == "SYN" and self.candidate_types != ("Synonymy",):
            raise ValueError("SYN records carry exactly [Synonymy]")
        if self.kind == "GEN" and not set(self.candidate_types) <= set(GENUS_TYPES):
            raise ValueError(f"GEN candidate types must be within {GENUS_TYPES}")
        if self.kind == "RELATOR" and not self.relator_id:
            raise ValueError("RELATOR records need a relator id")

    @property
    def sense_key(self) -> tuple[str, str, int]:
        return (self.headword, self.pos, self.sense_number)

    @property
    def flagged(self) -> bool:
        return self.candidate_types == (UNKNOWN,)


def extract_relations(entry: Entry, sense_no: int, labeled: Sequence[Cohort],
                      table: RelatorTable, sentence_index: int = 0) -> list[RelationRecord]:
    """One record per SYN/GEN/related-term label, in cohort order.

    Relator words (``&ERLT-*``) only add evidence to the related-term record
    with the same base ID; pairing is by ID, not adjacency.
    """
    relator_words: dict[str, list[int]] = {}
    for c in labeled:
        if c.label is None:
            continue
        kind, ident = split_label(c.label)
        if kind == "ERLT":
            relator_words.setdefault(strip_variant(ident), []).append(c.index)

    records = []
    for c in sorted(labeled, key=lambda c: c.index):
        if c.label is None:
            continue
        kind, ident = split_label(c.label)
        if kind not in LABEL_KIND:
            continue
        lemma = c.labeled_readings()[0].lemma
        common = dict(headword=entry.headword, pos=entry.pos, sense_number=sense_no,
                      related_lemma=lemma, rule_label=c.label)
        if kind == "ERLS":
            records.append(RelationRecord(kind="SYN", candidate_types=("Synonymy",),
                                          evidence=(sentence_index, (c.index,)), **common))
        elif kind == "ERLG":
            records.append(RelationRecord(kind="GEN", candidate_types=GENUS_TYPES,
                                          evidence=(sentence_index, (c.index,)), **common))
        else:
            rid = strip_variant(ident)
            row = table.lookup(rid, entry.pos)
            if row is None:
                log.warning("relator %s not in table for %s headword %r; flagged %s",
                            rid, entry.pos, entry.headword, UNKNOWN)
                types = (UNKNOWN,)
            else:
                types = row.types
            cohorts = tuple(sorted({c.index, *relator_words.get(rid, ())}))
            records.append(RelationRecord(kind="RELATOR", candidate_types=types, relator_id=rid,
                                          evidence=(sentence_index, cohorts), **common))
    return records


TSV_COLUMNS = ("headword", "pos", "sense", "kind", "relatorId", "relatedLemma",
               "candidateTypes", "ruleLabel", "evidence")


def format_evidence(evidence) -> str:
    sent, cohorts = evidence
    return f"{sent}:" + ",".join(map(str, cohorts))


def record_row(rec: RelationRecord) -> list[str]:
    return [rec.headword, rec.pos, str(rec.sense_number), rec.kind, rec.relator_id or "",
            rec.related_lemma, ",".join(rec.candidate_types), rec.rule_label or "",
            format_evidence(rec.evidence)]


def records_to_tsv(records: Iterable[RelationRecord]) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    lines += ["\t".join(record_row(r)) for r in records]
    return "\n".join(lines) + "\n"


def records_to_jsonl(records: Iterable[RelationRecord]) -> str:
    out = []
    for r in records:
        d = dict(zip(TSV_COLUMNS, record_row(r)))
        d["sense"] = r.sense_number
        d["candidateTypes"] = list(r.candidate_types)
        d["relatorId"] = r.relator_id
        d["ruleLabel"] = r.rule_label
        d["evidence"] = {"sentence": r.evidence[0], "cohorts": list(r.evidence[1])}
        out.append(json.dumps(d, ensure_ascii=False, sort_keys=True))
    return "".join(line + "\n" for line in out)


def parse_records_tsv(text: str) -> list[RelationRecord]:
    lines = text.splitlines()
    if not lines or tuple(lines[0].split("\t")) != TSV_COLUMNS:
        raise ValueError("relation TSV must start with the standard header")
    out = []
    for line in lines[1:]:
        if not line.strip():
            continue
        hw, pos, sense, kind, rid, lemma, types, label, ev = line.split("\t")
        sent, _, cohorts = ev.partition(":")
        out.append(RelationRecord(
            hw, pos, int(sense), kind, tuple(types.split(",")), lemma, rid or None, label or None,
            (int(sent), tuple(int(i) for i in cohorts.split(",") if i)),
        ))
    return out
