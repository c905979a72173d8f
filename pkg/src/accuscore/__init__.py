"""Span-level accuracy evaluation for generated sports summaries.

The toolchain validates span-annotated mistake lists, aligns reported
mistakes against gold-standard mistakes under four ordered match criteria,
scores recall/precision overall and per category, merges multi-annotator
gold lists, runs a rule-based fact-checking baseline against box-score game
records, and hosts an annotation HTTP service.
"""

from .aligner import Alignment, MatchCriterion, align_corpus, align_doc, span_overlap
from .baseline import Claim, ClaimKind, check_claims, check_document, extract_claims, run_baseline
from .games import GameData, GameDataError, PlayerLine, TeamLine, day_of_week, load_game, load_games
from .merge import AgreementRow, AgreementTable, MergeResult, agreement, merge, merge_detailed
from .model import (
    Category,
    Document,
    Mistake,
    MistakeList,
    Role,
    Severity,
    TokenSpan,
    ValidationIssue,
    has_errors,
    renumber_ids,
    validate_mistake_list,
)
from .scorer import (
    CORPUS_SCOPE,
    CountedRatio,
    ScoreBlock,
    ScoreReport,
    aggregate,
    score_corpus,
    score_doc,
)
from .tokenizer import TokenizedText, join_tokens, normalize, tokenize

__version__ = "0.1.0"

__all__ = [
    "Alignment", "MatchCriterion", "align_corpus", "align_doc", "span_overlap",
    "Claim", "ClaimKind", "check_claims", "check_document", "extract_claims", "run_baseline",
    "GameData", "GameDataError", "PlayerLine", "TeamLine", "day_of_week", "load_game",
    "load_games",
    "AgreementRow", "AgreementTable", "MergeResult", "agreement", "merge", "merge_detailed",
    "Category", "Document", "Mistake", "MistakeList", "Role", "Severity", "TokenSpan",
    "ValidationIssue", "has_errors", "renumber_ids", "validate_mistake_list",
    "CORPUS_SCOPE", "CountedRatio", "ScoreBlock", "ScoreReport", "aggregate",
    "score_corpus", "score_doc",
    "TokenizedText", "join_tokens", "normalize", "tokenize",
    "__version__",
]
