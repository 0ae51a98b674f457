"""Run the two-rule relator example end to end and print every stage.

Usage: python scripts/worked_example.py
"""
import io

from lexrel import cg
from lexrel.corpus import parse_entries
from lexrel.morph import format_cohorts
from lexrel.pipeline import Resources, analyze_corpus, extract_corpus
from lexrel.relations import records_to_tsv

ENTRY = "gibelzorrotz|noun|1|Udarearen antzeko sagar mota.\n"
RULES = """\
SET IZE-ZERO-NOTGELGEN = (IZE ZERO NOTGELGEN) ;
SET MOTA = ("mota") ;
MAP (&ERLT-MOTA) TARGET MOTA IF (-1 IZE-ZERO-NOTGELGEN) (1 PUNT/PKOMA/KOMA/DEF_BUKA) ;
MAP (&ERLZ-MOTA10) TARGET IZE-ZERO-NOTGELGEN IF (1 MOTA) (2 PUNT/PKOMA/KOMA/DEF_BUKA) ;
"""


def main():
    res = Resources.load()
    res.rules = {"noun": cg.parse_rules(RULES, "worked")}
    entries = parse_entries(io.StringIO(ENTRY))

    print("# readings")
    for sa in analyze_corpus(entries, res, mapped=False):
        for sent in sa.sentences:
            print(format_cohorts(sent, sa.entry.headword, sa.entry.pos), end="")
    print("\n# after mapping")
    analyses = analyze_corpus(entries, res)
    for sa in analyses:
        for sent in sa.sentences:
            print(format_cohorts(sent, sa.entry.headword, sa.entry.pos), end="")
    print("\n# relations")
    print(records_to_tsv(extract_corpus(analyses, res.relators)), end="")


if __name__ == "__main__":
    main()
