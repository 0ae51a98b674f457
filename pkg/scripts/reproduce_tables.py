"""Recompute the published evaluation tables from their raw counts.

Usage: python scripts/reproduce_tables.py [--tsv]

Only Target, OK and Wrong are taken as input; every other column is derived
by the harness and compared against the printed value.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from lexrel.evaluation import BLANK, DefStats, EvalCounts, coverage, error_rate, fmt, render_table  # noqa: E402
from tests.published_tables import DERIVATION, DICTIONARY, TABLES  # noqa: E402


def rebuild(rows):
    out, mismatches = [], 0
    for name, target, ok, wrong, marked, missed, cov, err in rows:
        c = EvalCounts(target, ok, wrong)
        got = (c.marked, c.missed, coverage(c), error_rate(c) if err is not None else None)
        if got != (marked, missed, cov, err):
            mismatches += 1
        out.append([name, str(target), str(ok), BLANK if err is None else str(wrong), str(c.marked),
                    str(c.missed), fmt(coverage(c)), fmt(got[3])])
    return out, mismatches


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tsv", action="store_true", help="tab-separated rows instead of aligned tables")
    args = ap.parse_args(argv)

    total_bad = 0
    for title, rows in TABLES.items():
        out, bad = rebuild(rows)
        total_bad += bad
        if args.tsv:
            sys.stdout.writelines("\t".join([title, *r]) + "\n" for r in out)
        else:
            print(render_table(out, f"Results for {title}"))

    deriv = []
    for name, target, ok, wrong in DERIVATION:
        c = EvalCounts(target, ok, wrong)
        deriv.append([name, str(target), str(ok), str(wrong), str(c.marked), str(c.missed),
                      fmt(coverage(c)), fmt(error_rate(c))])
    if args.tsv:
        sys.stdout.writelines("\t".join(["derivation", *r]) + "\n" for r in deriv)
    else:
        print(render_table(deriv, "Results of derivation (coverage and error rate not printed in the source)"))

    for label, (num, den, printed) in DICTIONARY.items():
        stats = DefStats(100, den, num) if "per def" in label else DefStats(den, num, num)
        value = stats.relations_per_def if "per def" in label else stats.def_coverage
        ok = "ok" if value == printed else "MISMATCH"
        total_bad += value != printed
        print(f"{label}: {num}/{den} -> {value} (printed {printed}) {ok}")

    print(f"\n{total_bad} mismatching cells")
    return 1 if total_bad else 0


if __name__ == "__main__":
    sys.exit(main())
