"""Aligns reported mistakes against gold-standard mistakes.

Each reported mistake (RM) is assigned to at most one gold-standard mistake
(GSM) under the first criterion that applies, in this fixed order:

1. EXACT - an unconsumed GSM with the identical span and identical category.
2. SAME_CATEGORY - the unconsumed same-category GSM with maximal non-zero
   positional overlap.
3. DIFFERENT_CATEGORY - the unconsumed different-category GSM with maximal
   non-zero positional overlap.
4. NOT_FOUND - nothing above applied.

Matching is one-to-one: once a GSM is consumed by an RM it is unavailable to
later RMs. RMs are processed in ascending (start, end, category) order. Ties
on maximal overlap break to the GSM with the smaller start token, then the
smaller end token, then the lexicographically smaller mistake id.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import Mistake, MistakeList, Role, TokenSpan


class MatchCriterion(Enum):
    EXACT = "EXACT"
    SAME_CATEGORY = "SAME_CATEGORY"
    DIFFERENT_CATEGORY = "DIFFERENT_CATEGORY"
    NOT_FOUND = "NOT_FOUND"


@dataclass(frozen=True)
class Alignment:
    """The outcome of matching one RM: the consumed GSM and the criterion, or NOT_FOUND."""

    doc_id: str
    rm_id: str
    gsm_id: str | None
    criterion: MatchCriterion
    overlap: int


def span_overlap(a: TokenSpan, b: TokenSpan) -> int:
    """Number of token indices covered by both spans."""
    return max(0, min(a.end, b.end) - max(a.start, b.start) + 1)


def _processing_order(m: Mistake) -> tuple:
    return (m.span.start, m.span.end, m.category.rank, m.mistake_id)


def _best(rm: Mistake, candidates: list[Mistake]) -> tuple[Mistake, int] | None:
    """Pick the candidate with maximal non-zero overlap under the tie-break rule."""
    scored = []
    for g in candidates:
        ov = span_overlap(rm.span, g.span)
        if ov > 0:
            scored.append(((-ov, g.span.start, g.span.end, g.mistake_id), g, ov))
    if not scored:
        return None
    _, best, ov = min(scored, key=lambda item: item[0])
    return best, ov


def align_doc(rml: MistakeList, gsml: MistakeList, doc_id: str) -> list[Alignment]:
    """Align one document's RMs to its GSMs; returns one Alignment per RM in processing order."""
    if rml.role is not Role.REPORTED or gsml.role is not Role.GOLD:
        raise ValueError("align expects a REPORTED list and a GOLD list")
    rms = sorted(rml.for_doc(doc_id), key=_processing_order)
    gsms = list(gsml.for_doc(doc_id))
    consumed: set[str] = set()
    alignments: list[Alignment] = []
    for rm in rms:
        available = [g for g in gsms if g.mistake_id not in consumed]

        exact = [g for g in available if g.span == rm.span and g.category is rm.category]
        if exact:
            best, ov = _best(rm, exact)  # span-identical; tie-break on id only
            consumed.add(best.mistake_id)
            alignments.append(Alignment(doc_id, rm.mistake_id, best.mistake_id,
                                        MatchCriterion.EXACT, ov))
            continue

        same = _best(rm, [g for g in available if g.category is rm.category])
        if same is not None:
            best, ov = same
            consumed.add(best.mistake_id)
            alignments.append(Alignment(doc_id, rm.mistake_id, best.mistake_id,
                                        MatchCriterion.SAME_CATEGORY, ov))
            continue

        different = _best(rm, [g for g in available if g.category is not rm.category])
        if different is not None:
            best, ov = different
            consumed.add(best.mistake_id)
            alignments.append(Alignment(doc_id, rm.mistake_id, best.mistake_id,
                                        MatchCriterion.DIFFERENT_CATEGORY, ov))
            continue

        alignments.append(Alignment(doc_id, rm.mistake_id, None, MatchCriterion.NOT_FOUND, 0))
    return alignments


def align_corpus(rml: MistakeList, gsml: MistakeList) -> list[Alignment]:
    """Align every document mentioned by either list, ordered by doc_id."""
    doc_ids = sorted(set(rml.doc_ids()) | set(gsml.doc_ids()))
    alignments: list[Alignment] = []
    for doc_id in doc_ids:
        alignments.extend(align_doc(rml, gsml, doc_id))
    return alignments
