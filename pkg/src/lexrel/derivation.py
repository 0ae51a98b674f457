"""Single-affix segmentation of derived headwords (``alaitsu`` = ``alai`` + ``tsu``)."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .corpus import POS_CODES
from .morph import POS_CODE_OF, Lexicon
from .relations import RelationRecord

ANY = None


@dataclass(frozen=True)
class Affix:
    form: str
    position: str  # "suffix" | "prefix"
    produces_pos: str
    root_pos: frozenset[str] | None = ANY

    def __post_init__(self):
        if not self.form:
            raise ValueError("empty affix")
        if self.position not in ("suffix", "prefix"):
            raise ValueError(f"bad affix position {self.position!r}")
        if self.produces_pos not in POS_CODES:
            raise ValueError(f"bad POS {self.produces_pos!r}")
        if self.root_pos is not None and not self.root_pos <= set(POS_CODES):
            raise ValueError(f"bad root POS constraint {sorted(self.root_pos)}")
        # verbal morphemes always take a verbal root
        if self.produces_pos == "verb" and self.root_pos != frozenset({"verb"}):
            raise ValueError(f"verbal affix {self.form!r} must be restricted to verb roots")

    def allows(self, pos: str) -> bool:
        return self.root_pos is None or pos in self.root_pos

    def strip(self, word: str) -> str | None:
        if len(word) <= len(self.form):
            return None
        if self.position == "suffix" and word.endswith(self.form):
            return word[: -len(self.form)]
        if self.position == "prefix" and word.startswith(self.form):
            return word[len(self.form):]
        return None


class AffixTable:
    def __init__(self, affixes: Iterable[Affix] = ()):
        self.affixes = tuple(affixes)
        keys = [(a.form, a.position) for a in self.affixes]
        if len(set(keys)) != len(keys):
            raise ValueError("affixes must be unique per (affix, position)")

    def candidates(self, pos: str) -> list[Affix]:
        """Suffixes, then prefixes, each longest first."""
        fit = [a for a in self.affixes if a.produces_pos == pos]
        return sorted(fit, key=lambda a: (a.position != "suffix", -len(a.form), a.form))

    def __iter__(self):
        return iter(self.affixes)

    def __len__(self):
        return len(self.affixes)


@dataclass(frozen=True)
class DerivationRecord:
    headword: str
    pos: str
    root: str
    affix: str
    affix_position: str
    root_pos: str

    def __post_init__(self):
        rebuilt = self.root + self.affix if self.affix_position == "suffix" else self.affix + self.root
        if rebuilt != self.headword:
            raise ValueError(f"{self.root!r} and {self.affix!r} do not rebuild {self.headword!r}")

    @property
    def affix_label(self) -> str:
        return f"-{self.affix}" if self.affix_position == "suffix" else f"{self.affix}-"

    def to_relation(self) -> RelationRecord:
        # derivation links the headword as a whole, hence sense 0
        return RelationRecord(self.headword, self.pos, 0, "DERIV", ("Derivation",), self.root,
                              rule_label=self.affix_label)


def segment_headword(headword: str, pos: str, lex: Lexicon,
                     affixes: AffixTable) -> DerivationRecord | None:
    if not headword:
        raise ValueError("empty headword")
    word = headword
    for affix in affixes.candidates(pos):
        root = affix.strip(word)
        if root is None:
            continue
        root_codes = sorted(POS_CODE_OF[t] for t in lex.lookup(root) if t in POS_CODE_OF)
        for root_pos in root_codes:
            if affix.allows(root_pos):
                return DerivationRecord(word, pos, root, affix.form, affix.position, root_pos)
    return None


def parse_affixes(text: str) -> AffixTable:
    items = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 4:
            raise ValueError(f"affix line {lineno}: expected affix<TAB>position<TAB>producesPOS<TAB>rootPOS")
        form, position, produces, roots = cols
        root_pos = ANY if roots == "ANY" else frozenset(r.strip() for r in roots.split(",") if r.strip())
        try:
            items.append(Affix(form.strip("-"), position, produces, root_pos))
        except ValueError as exc:
            raise ValueError(f"affix line {lineno}: {exc}") from None
    try:
        return AffixTable(items)
    except ValueError as exc:
        raise ValueError(f"affix table: {exc}") from None


def load_affixes(path) -> AffixTable:
    return parse_affixes(Path(path).read_text(encoding="utf-8"))


def derivations_to_tsv(records: Iterable[DerivationRecord]) -> str:
    lines = ["headword\tpos\troot\trootPos\taffix\tposition"]
    lines += [f"{r.headword}\t{r.pos}\t{r.root}\t{r.root_pos}\t{r.affix}\t{r.affix_position}"
              for r in records]
    return "\n".join(lines) + "\n"
