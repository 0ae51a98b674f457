"""Command-line driver.

    lexrel extract --entries defs.txt --rules noun=noun.cg --out out/

Exit status: 0 success, 1 usage, 2 data error, 3 internal invariant violation.
Every run is deterministic; ``LEXREL_SEED`` is accepted and ignored.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cg
from .corpus import POS_CODES, Entry, ParseError, parse_entries, serialize_entries
from .derivation import derivations_to_tsv
from .evaluation import (DefStats, EvalCounts, GoldAnnotation, coverage, definition_stats, error_rate,
                         fmt, group_by_sense, load_gold, render_table, rows_to_tsv, score,
                         table_rows)
from .morph import format_cohorts
from .pipeline import (DEFAULT_RULES, Resources, SenseAnalysis, analyze_corpus, derive_corpus,
                       extract_corpus)
from .relations import RelationRecord, records_to_jsonl, records_to_tsv

log = logging.getLogger("lexrel")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
COMMANDS = ("ingest", "analyze", "map", "extract", "deriv", "eval", "stats")
POS_TITLES = {"noun": "Nouns", "adj": "Adjectives", "verb": "Verbs"}


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


class StageError(Exception):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")


@dataclass
class PipelineConfig:
    entries: Path
    lexicon: Path | None = None
    suffixes: Path | None = None
    affixes: Path | None = None
    rules: dict[str, Path] = field(default_factory=dict)
    relators: Path | None = None
    gold: Path | None = None
    out: Path | None = None
    pos: str | None = None
    trace: bool = False

    def validate(self):
        paths = [self.entries, self.lexicon, self.suffixes, self.affixes, self.relators, self.gold,
                 *self.rules.values()]
        for p in paths:
            if p is not None and not p.is_file():
                raise UsageError(f"no such file: {p}")
        if not self.rules:
            raise UsageError("at least one rule file is required")


def _parse_rules_arg(values: list[str] | None) -> dict[str, Path]:
    if not values:
        return dict(DEFAULT_RULES)
    out = {}
    for v in values:
        pos, sep, path = v.partition("=")
        if not sep or pos not in POS_CODES or not path:
            raise UsageError(f"--rules expects <pos>=<path> with pos in {POS_CODES}, got {v!r}")
        if pos in out:
            raise UsageError(f"--rules given twice for {pos}")
        out[pos] = Path(path)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--entries", type=Path, required=True, help="entry interchange file")
    common.add_argument("--lexicon", type=Path, help="lexicon TSV (default: bundled fixture)")
    common.add_argument("--suffixes", type=Path, help="inflectional suffix TSV")
    common.add_argument("--affixes", type=Path, help="derivational affix TSV")
    common.add_argument("--rules", action="append", metavar="POS=PATH",
                        help="MAP rule file for one POS; repeatable")
    common.add_argument("--relators", type=Path, help="relator table TSV")
    common.add_argument("--gold", type=Path, help="gold annotation TSV (eval)")
    common.add_argument("--out", type=Path, help="output directory (default: stdout)")
    common.add_argument("--pos", choices=POS_CODES, help="only process entries of this POS")
    common.add_argument("--trace", action="store_true", help="also emit the labelled cohort trace")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="lexrel", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "ingest": "validate and normalise entries",
        "analyze": "morphological analysis trace",
        "map": "apply MAP rules, labelled trace",
        "extract": "relation records as TSV / JSON lines",
        "deriv": "derivational segmentation of headwords",
        "eval": "score against gold annotations",
        "stats": "definition-level statistics",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(args) -> PipelineConfig:
    return PipelineConfig(
        entries=args.entries, lexicon=args.lexicon, suffixes=args.suffixes, affixes=args.affixes,
        rules=_parse_rules_arg(args.rules), relators=args.relators, gold=args.gold, out=args.out,
        pos=args.pos, trace=args.trace,
    )


# -- stages -----------------------------------------------------------------

def _stage(name, fn, *a, **kw):
    try:
        return fn(*a, **kw)
    except (ValueError, UnicodeDecodeError) as exc:
        raise StageError(name, exc) from exc


def _read_entries(cfg: PipelineConfig) -> tuple[list[Entry], list[Entry]]:
    text = cfg.entries.read_text(encoding="utf-8")
    try:
        entries = parse_entries(text)
    except ParseError as exc:
        raise ValueError(f"{cfg.entries}: {exc}") from exc
    selected = [e for e in entries if cfg.pos is None or e.pos == cfg.pos]
    return entries, selected


def render_trace(analyses: list[SenseAnalysis]) -> str:
    blocks = []
    for sa in analyses:
        head = [f"/<@@headword{sa.entry.headword}>/<ID>/", f"/<@@POS{sa.entry.pos}>/<ID>/",
                f"/<@@sense{sa.sense_number}>/<ID>/"]
        body = "".join(format_cohorts(s) for s in sa.sentences)
        blocks.append("\n".join(head) + "\n" + body)
    return "\n".join(blocks)


def check_records(analyses: list[SenseAnalysis], records: list[RelationRecord]):
    n_labels = sum(1 for sa in analyses for s in sa.sentences for c in s
                   if c.label is not None and c.label[1:5] in ("ERLS", "ERLG", "ERLZ"))
    if n_labels != len(records):
        raise InvariantError(f"{n_labels} relation labels but {len(records)} records")


def render_stats(total_senses: int, analysed: int, with_relation: int, relations: int,
                 derivations: int = 0) -> str:
    stats = DefStats(analysed, with_relation, relations)
    without = stats.defs_without_relation

    def pct(n, d):
        return fmt(coverage(EvalCounts(d, n, 0)) if d else None)

    lines = [
        f"definitions analysed: {analysed:,}",
        f"definitions with relation: {with_relation:,} ({pct(with_relation, analysed)}%)",
        f"relations marked: {relations:,}",
        f"relations per definition: {fmt(stats.relations_per_def, 2)}",
        f"derivational relations: {derivations:,}",
        f"total relations: {relations + derivations:,}",
        f"senses without relation: {without:,} ({pct(without, total_senses)}%)",
        f"  of all senses in input: {without:,} / {total_senses:,} ({pct(without, total_senses)}%)",
        f"  of analysed senses: {without:,} / {analysed:,} ({pct(without, analysed)}%)",
        "note: percentages are exact quotients of the counts shown, rounded half away from zero",
    ]
    return "\n".join(lines) + "\n"


def _eval_outputs(entries: list[Entry], records: list[RelationRecord], derivs: list[RelationRecord],
                  gold: GoldAnnotation) -> tuple[str, str]:
    text_parts, tsv_parts = [], ["group\trow\ttarget\tok\twrong\tmarked\tmissed\tcoverage\terror_rate\n"]
    present = [p for p in POS_CODES if any(e.pos == p for e in entries)]
    for pos in present:
        sub_gold = GoldAnnotation({k: v for k, v in gold.pairs.items() if k[1] == pos})
        sub_sys = [r for r in records if r.pos == pos]
        sc = score(sub_sys, sub_gold)
        total_defs = sum(len(e.senses) for e in entries if e.pos == pos)
        defs = definition_stats(group_by_sense(sub_sys), total_defs)
        rows = table_rows(sc, defs)
        text_parts.append(render_table(rows, f"Results for {POS_TITLES[pos].lower()}"))
        tsv_parts.append(rows_to_tsv(rows, pos))

    drows = []
    total = EvalCounts()
    for pos in present:
        sub_gold = GoldAnnotation({k: v for k, v in gold.pairs.items() if k[1] == pos})
        c = score([d for d in derivs if d.pos == pos], sub_gold, kinds=("DERIV",))["DERIV"]
        total = total + c
        drows.append(_count_row(POS_TITLES[pos], c))
    drows.append(_count_row("Overall", total))
    text_parts.append(render_table(drows, "Results of derivation"))
    tsv_parts.append(rows_to_tsv(drows, "deriv"))
    return "\n".join(text_parts), "".join(tsv_parts)


def _count_row(name: str, c: EvalCounts) -> list[str]:
    return [name, str(c.target), str(c.ok), str(c.wrong), str(c.marked), str(c.missed),
            fmt(coverage(c)), fmt(error_rate(c))]


def run(command: str, cfg: PipelineConfig) -> dict[str, str]:
    """Run one subcommand; returns output file name -> content."""
    cfg.validate()
    if command == "eval" and cfg.gold is None:
        raise UsageError("eval needs --gold")

    all_entries, entries = _stage("ingest", _read_entries, cfg)
    if command == "ingest":
        return {"entries.txt": serialize_entries(entries)}

    res = _stage("load", Resources.load, cfg.lexicon, cfg.suffixes, cfg.relators, cfg.affixes, cfg.rules)

    if command == "deriv":
        derivs = _stage("deriv", derive_corpus, entries, res)
        return {"derivations.tsv": derivations_to_tsv(derivs)}

    if command == "analyze":
        analyses = _stage("analyze", analyze_corpus, entries, res, mapped=False)
        return {"analysis.txt": render_trace(analyses)}

    analyses = _stage("map", analyze_corpus, entries, res)
    if command == "map":
        return {"mapped.txt": render_trace(analyses)}

    records = _stage("extract", extract_corpus, analyses, res.relators)
    check_records(analyses, records)
    outputs: dict[str, str] = {}
    if cfg.trace:
        outputs["mapped.txt"] = render_trace(analyses)

    if command == "extract":
        outputs["relations.tsv"] = records_to_tsv(records)
        outputs["relations.jsonl"] = records_to_jsonl(records)
        return outputs

    derivs = [d.to_relation() for d in _stage("deriv", derive_corpus, entries, res)]
    if command == "eval":
        gold = _stage("gold", load_gold, cfg.gold)
        text, tsv = _eval_outputs(entries, records, derivs, gold)
        outputs["eval.txt"] = text
        outputs["eval.tsv"] = tsv
        return outputs

    if command == "stats":
        by_sense = group_by_sense(records)
        analysed = sum(len(e.senses) for e in entries)
        total = sum(len(e.senses) for e in all_entries)
        outputs["stats.txt"] = render_stats(total, analysed, len(by_sense), len(records), len(derivs))
        return outputs
    raise UsageError(f"unknown command {command!r}")


def write_outputs(outputs: dict[str, str], out_dir: Path | None, stream=None):
    if out_dir is None:
        stream = stream or sys.stdout
        for name in sorted(outputs):
            if len(outputs) > 1:
                stream.write(f"==> {name} <==\n")
            stream.write(outputs[name])
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    try:
        for name in sorted(outputs):
            tmp = out_dir / f".{name}.tmp"
            with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(outputs[name])
            written.append(tmp)
        for tmp in written:
            tmp.replace(out_dir / tmp.name[1:-4])
    except OSError:
        for tmp in written:
            tmp.unlink(missing_ok=True)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    # accepted for forward compatibility; nothing here is random
    os.environ.get("LEXREL_SEED")
    prog = f"lexrel {args.command}"
    try:
        cfg = config_from_args(args)
        outputs = run(args.command, cfg)
        write_outputs(outputs, cfg.out)
    except UsageError as exc:
        print(f"{prog}: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StageError, ParseError, cg.RuleParseError) as exc:
        print(f"{prog}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InvariantError as exc:
        print(f"{prog}: internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"{prog}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
