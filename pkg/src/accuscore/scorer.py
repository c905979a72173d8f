"""Recall/precision scoring over alignments, per document and corpus-aggregated.

Overall scores ignore category: an RM counts as correct when it aligned under
any criterion other than NOT_FOUND, and a GSM counts as found when any RM
consumed it. Per-category scores only credit EXACT and SAME_CATEGORY
alignments, so a DIFFERENT_CATEGORY match contributes to the overall numbers
but to no category's numbers.

All ratios are exact fractions of integer counts. A ratio with a zero
denominator is undefined and reported as None, never as 0 or 1; aggregation
sums numerators and denominators (micro-average), so undefined per-document
ratios never distort corpus totals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .aligner import Alignment, MatchCriterion
from .model import Category, Mistake, MistakeList

CORPUS_SCOPE = "CORPUS"

_CATEGORY_CRITERIA = (MatchCriterion.EXACT, MatchCriterion.SAME_CATEGORY)


@dataclass(frozen=True)
class CountedRatio:
    """A numerator/denominator pair; the ratio is undefined when den == 0."""

    num: int
    den: int

    @property
    def value(self) -> Fraction | None:
        if self.den == 0:
            return None
        return Fraction(self.num, self.den)

    def __add__(self, other: "CountedRatio") -> "CountedRatio":
        return CountedRatio(self.num + other.num, self.den + other.den)


@dataclass(frozen=True)
class ScoreBlock:
    recall: CountedRatio
    precision: CountedRatio

    @property
    def f1(self) -> Fraction | None:
        """Harmonic mean of precision and recall; 0 when both are 0, None when undefined."""
        p = self.precision.value
        r = self.recall.value
        if p is None or r is None:
            return None
        if p + r == 0:
            return Fraction(0)
        return 2 * p * r / (p + r)

    def __add__(self, other: "ScoreBlock") -> "ScoreBlock":
        return ScoreBlock(self.recall + other.recall, self.precision + other.precision)


@dataclass(frozen=True)
class ScoreReport:
    """Overall and per-category score blocks for one document or the whole corpus."""

    scope: str
    overall: ScoreBlock
    per_category: Mapping[Category, ScoreBlock]


def _check_alignments(
    alignments: list[Alignment],
    gsm_by_id: dict[str, Mistake],
    rm_by_id: dict[str, Mistake],
    doc_id: str,
) -> None:
    seen_rm: set[str] = set()
    seen_gsm: set[str] = set()
    for a in alignments:
        if a.doc_id != doc_id:
            raise ValueError(f"alignment for {a.doc_id!r} passed while scoring {doc_id!r}")
        if a.rm_id not in rm_by_id:
            raise ValueError(f"alignment references unknown RM {a.rm_id!r} in {doc_id!r}")
        if a.rm_id in seen_rm:
            raise ValueError(f"RM {a.rm_id!r} aligned twice in {doc_id!r}")
        seen_rm.add(a.rm_id)
        if (a.gsm_id is None) != (a.criterion is MatchCriterion.NOT_FOUND):
            raise ValueError(f"alignment of RM {a.rm_id!r} mixes NOT_FOUND with a GSM id")
        if a.gsm_id is not None:
            if a.gsm_id not in gsm_by_id:
                raise ValueError(f"alignment references unknown GSM {a.gsm_id!r} in {doc_id!r}")
            if a.gsm_id in seen_gsm:
                raise ValueError(f"GSM {a.gsm_id!r} consumed twice in {doc_id!r}")
            seen_gsm.add(a.gsm_id)
    missing = set(rm_by_id) - seen_rm
    if missing:
        raise ValueError(f"no alignment for RM(s) {sorted(missing)} in {doc_id!r}")


def score_doc(
    alignments: Iterable[Alignment],
    gsml: MistakeList,
    rml: MistakeList,
    doc_id: str,
) -> ScoreReport:
    """Score one document from its alignments and the two mistake lists."""
    gsms = gsml.for_doc(doc_id)
    rms = rml.for_doc(doc_id)
    gsm_by_id = {m.mistake_id: m for m in gsms}
    rm_by_id = {m.mistake_id: m for m in rms}
    doc_alignments = [a for a in alignments if a.doc_id == doc_id]
    _check_alignments(doc_alignments, gsm_by_id, rm_by_id, doc_id)

    matched = [a for a in doc_alignments if a.criterion is not MatchCriterion.NOT_FOUND]
    overall = ScoreBlock(
        recall=CountedRatio(len({a.gsm_id for a in matched}), len(gsms)),
        precision=CountedRatio(len(matched), len(rms)),
    )

    per_category: dict[Category, ScoreBlock] = {}
    for category in Category:
        category_hits = [
            a for a in matched
            if a.criterion in _CATEGORY_CRITERIA and rm_by_id[a.rm_id].category is category
        ]
        per_category[category] = ScoreBlock(
            recall=CountedRatio(
                len(category_hits), sum(1 for g in gsms if g.category is category)),
            precision=CountedRatio(
                len(category_hits), sum(1 for r in rms if r.category is category)),
        )
    return ScoreReport(scope=doc_id, overall=overall, per_category=per_category)


def score_corpus(
    alignments: Iterable[Alignment], gsml: MistakeList, rml: MistakeList
) -> list[ScoreReport]:
    """Score every document mentioned by either list, ordered by doc_id."""
    alignments = list(alignments)
    doc_ids = sorted(set(rml.doc_ids()) | set(gsml.doc_ids()))
    return [score_doc(alignments, gsml, rml, doc_id) for doc_id in doc_ids]


def aggregate(reports: Iterable[ScoreReport]) -> ScoreReport:
    """Micro-average per-document reports: sum counts, then recompute ratios."""
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to aggregate: no per-document reports")
    for report in reports:
        if report.scope == CORPUS_SCOPE:
            raise ValueError("cannot aggregate an already-aggregated report")
    overall = reports[0].overall
    per_category = dict(reports[0].per_category)
    for report in reports[1:]:
        overall = overall + report.overall
        for category in Category:
            per_category[category] = per_category[category] + report.per_category[category]
    return ScoreReport(scope=CORPUS_SCOPE, overall=overall, per_category=per_category)
