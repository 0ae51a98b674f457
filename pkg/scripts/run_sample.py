"""Run every CLI stage over the bundled sample corpus into one directory.

Usage: python scripts/run_sample.py OUTDIR
"""
import sys

from lexrel.cli import COMMANDS, main
from lexrel.pipeline import data_path


def run(out_dir):
    args = ["--entries", str(data_path("sample_entries.txt")), "--gold", str(data_path("sample_gold.tsv"))]
    for command in COMMANDS:
        status = main([command, *args, "--trace", "--out", f"{out_dir}/{command}"])
        print(f"{command}: exit {status}")
        if status:
            return status
    return 0


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__.strip())
    sys.exit(run(sys.argv[1]))
