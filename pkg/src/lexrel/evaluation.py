"""Coverage / error-rate scoring against hand-annotated gold relations.

Coverage is OK / Target and error rate is Wrong / Marked, both as percentages
rounded half away from zero. A system record is OK when the gold for its
sense lists the same (kind, related lemma) pair; candidate relation types are
not compared.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import POS_CODES
from .relations import KINDS, RelationRecord

log = logging.getLogger(__name__)

BLANK = "—"
SenseKey = tuple[str, str, int]


def round_half_away(value: Fraction, places: int) -> float:
    q = Decimal(value.numerator) / Decimal(value.denominator)
    # ROUND_HALF_UP in decimal rounds ties away from zero
    return float(q.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


def _percent(num: int, den: int) -> float | None:
    if den <= 0:
        return None
    return round_half_away(Fraction(100 * num, den), 1)


def fmt(value: float | None, places: int = 1) -> str:
    return BLANK if value is None else f"{value:.{places}f}"


@dataclass(frozen=True)
class EvalCounts:
    target: int = 0
    ok: int = 0
    wrong: int = 0

    def __post_init__(self):
        if min(self.target, self.ok, self.wrong) < 0:
            raise ValueError("counts must be non-negative")
        if self.ok > self.target:
            raise ValueError(f"ok ({self.ok}) exceeds target ({self.target})")

    @property
    def marked(self) -> int:
        return self.ok + self.wrong

    @property
    def missed(self) -> int:
        return self.target - self.ok

    def __add__(self, other: "EvalCounts") -> "EvalCounts":
        return EvalCounts(self.target + other.target, self.ok + other.ok, self.wrong + other.wrong)


def coverage(c: EvalCounts) -> float | None:
    return _percent(c.ok, c.target)


def error_rate(c: EvalCounts) -> float | None:
    return _percent(c.wrong, c.marked)


@dataclass
class GoldAnnotation:
    pairs: dict[SenseKey, list[tuple[str, str]]] = field(default_factory=dict)

    def add(self, key: SenseKey, kind: str, lemma: str):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        slot = self.pairs.setdefault(key, [])
        if (kind, lemma) in slot:
            raise ValueError(f"duplicate gold pair {(kind, lemma)} for {key}")
        slot.append((kind, lemma))

    def items(self):
        for key, pairs in self.pairs.items():
            for kind, lemma in pairs:
                yield key, kind, lemma

    def count(self, kind: str | None = None) -> int:
        return sum(1 for _, k, _ in self.items() if kind is None or k == kind)


def parse_gold(text: str) -> GoldAnnotation:
    gold = GoldAnnotation()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 5:
            raise ValueError(f"gold line {lineno}: expected headword, pos, sense, kind, relatedLemma")
        hw, pos, sense, kind, lemma = cols
        if pos not in POS_CODES or not sense.isdigit():
            raise ValueError(f"gold line {lineno}: bad pos/sense {pos!r}/{sense!r}")
        try:
            gold.add((hw, pos, int(sense)), kind, lemma)
        except ValueError as exc:
            raise ValueError(f"gold line {lineno}: {exc}") from None
    return gold


def load_gold(path) -> GoldAnnotation:
    return parse_gold(Path(path).read_text(encoding="utf-8"))


@dataclass
class Score:
    by_kind: dict[str, EvalCounts]
    duplicates: list[tuple[SenseKey, str, str]] = field(default_factory=list)

    @property
    def overall(self) -> EvalCounts:
        total = EvalCounts()
        for c in self.by_kind.values():
            total = total + c
        return total

    def __getitem__(self, kind: str) -> EvalCounts:
        return self.by_kind[kind]


def score(system: Iterable[RelationRecord], gold: GoldAnnotation,
          kinds: Sequence[str] = KINDS) -> Score:
    gold_set = set(gold.items())
    seen = set()
    duplicates = []
    ok: dict[str, int] = defaultdict(int)
    wrong: dict[str, int] = defaultdict(int)
    for rec in system:
        item = (rec.sense_key, rec.kind, rec.related_lemma)
        if item in seen:
            duplicates.append(item)
            continue
        seen.add(item)
        if item in gold_set:
            ok[rec.kind] += 1
        else:
            wrong[rec.kind] += 1
    if duplicates:
        log.warning("%d duplicate system records counted once", len(duplicates))
    by_kind = {k: EvalCounts(gold.count(k), ok[k], wrong[k]) for k in kinds}
    return Score(by_kind, sorted(duplicates))


@dataclass(frozen=True)
class DefStats:
    total_defs: int
    defs_with_relation: int
    relations_marked: int

    def __post_init__(self):
        if not 0 <= self.defs_with_relation <= self.total_defs:
            raise ValueError("defs_with_relation must lie within [0, total_defs]")

    @property
    def def_coverage(self) -> float | None:
        return _percent(self.defs_with_relation, self.total_defs)

    @property
    def relations_per_def(self) -> float | None:
        if self.defs_with_relation == 0:
            return None
        return round_half_away(Fraction(self.relations_marked, self.defs_with_relation), 2)

    @property
    def defs_without_relation(self) -> int:
        return self.total_defs - self.defs_with_relation

    def as_counts(self) -> EvalCounts:
        """The Definitions row: target = all defs, OK = defs with a relation."""
        return EvalCounts(self.total_defs, self.defs_with_relation, 0)


def definition_stats(by_sense: Mapping[SenseKey, Sequence[RelationRecord]], total_defs: int) -> DefStats:
    with_rel = sum(1 for recs in by_sense.values() if recs)
    marked = sum(len(recs) for recs in by_sense.values())
    if with_rel > total_defs:
        raise ValueError(f"{with_rel} senses with relations but only {total_defs} definitions")
    return DefStats(total_defs, with_rel, marked)


def group_by_sense(records: Iterable[RelationRecord]) -> dict[SenseKey, list[RelationRecord]]:
    out: dict[SenseKey, list[RelationRecord]] = {}
    for r in records:
        out.setdefault(r.sense_key, []).append(r)
    return out


# -- reports --------------------------------------------------------------------

ROW_NAMES = {"SYN": "SYN", "GEN": "GEN", "RELATOR": "Relator", "DERIV": "Derivation"}
HEADER = ("", "Target", "OK", "Wrong", "Marked", "Missed", "Coverage (%)", "Error rate (%)")


def table_rows(sc: Score, defs: DefStats | None = None,
               kinds: Sequence[str] = ("SYN", "GEN", "RELATOR")) -> list[list[str]]:
    rows = []
    counts = [(ROW_NAMES[k], sc[k]) for k in kinds]
    overall = EvalCounts()
    for _, c in counts:
        overall = overall + c
    counts.append(("Overall", overall))
    for name, c in counts:
        rows.append([name, str(c.target), str(c.ok), str(c.wrong), str(c.marked), str(c.missed),
                     fmt(coverage(c)), fmt(error_rate(c))])
    if defs is not None:
        c = defs.as_counts()
        # definitions are not judged right or wrong
        rows.append(["Definitions", str(c.target), str(c.ok), BLANK, str(c.marked), str(c.missed),
                     fmt(coverage(c)), BLANK])
    return rows


def render_table(rows: Sequence[Sequence[str]], title: str = "") -> str:
    table = [list(HEADER)] + [list(r) for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(HEADER))]
    lines = [title] if title else []
    for r in table:
        cells = [r[0].ljust(widths[0])] + [cell.rjust(w) for cell, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def rows_to_tsv(rows: Sequence[Sequence[str]], group: str = "") -> str:
    return "".join("\t".join([group, *r]) + "\n" for r in rows)
