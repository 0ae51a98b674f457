"""Semantic relation extraction from dictionary definitions with MAP rules."""

from .cg import RuleSet, apply_rules, parse_rules
from .corpus import Entry, Sense, parse_entries, tokenize
from .derivation import segment_headword
from .evaluation import EvalCounts, coverage, definition_stats, error_rate, score
from .morph import analyze_sentence, analyze_token
from .relations import extract_relations, strip_variant

__version__ = "0.1.0"
