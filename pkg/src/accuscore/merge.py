"""Merges per-annotator gold lists into one adjudicated list; reports agreement.

Clustering is single-link: within a document, two entries from different
annotators join the same cluster whenever a pairwise alignment (run in both
directions for each annotator pair) links them. A cluster survives when it
contains entries from at least `quorum` distinct annotators. The surviving
mistake takes the majority category (ties break to the canonical category
order and are reported so a human can adjudicate) and the smallest
(start, end) span among the majority-category members, so every output span
is attested by at least one annotator.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .aligner import MatchCriterion, align_corpus, align_doc
from .model import Category, Mistake, MistakeList, Role, renumber_ids
from .scorer import CountedRatio, ScoreBlock, aggregate, score_corpus


@dataclass(frozen=True)
class MergeResult:
    merged: MistakeList
    category_ties: tuple[str, ...]


@dataclass(frozen=True)
class AgreementRow:
    gold_annotator: str
    reported_annotator: str
    precision: Fraction | None
    recall: Fraction | None
    f1: Fraction | None


@dataclass(frozen=True)
class AgreementTable:
    rows: tuple[AgreementRow, ...]
    mean_f1: Fraction | None


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[tuple[str, str], tuple[str, str]] = {}

    def add(self, key: tuple[str, str]) -> None:
        self.parent.setdefault(key, key)

    def find(self, key: tuple[str, str]) -> tuple[str, str]:
        root = key
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[key] != root:
            self.parent[key], key = root, self.parent[key]
        return root

    def union(self, a: tuple[str, str], b: tuple[str, str]) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _as_reported(mistakes: MistakeList) -> MistakeList:
    return MistakeList.build(Role.REPORTED, mistakes.entries)


def merge_detailed(annotators: Mapping[str, MistakeList], quorum: int) -> MergeResult:
    """Merge annotator lists under a quorum; also reports category-vote ties."""
    if not annotators:
        raise ValueError("at least one annotator is required")
    if not 1 <= quorum <= len(annotators):
        raise ValueError(
            f"quorum must be between 1 and the annotator count ({len(annotators)}), got {quorum}")

    annotator_ids = sorted(annotators)
    doc_ids = sorted({d for mlist in annotators.values() for d in mlist.doc_ids()})
    merged_entries: list[Mistake] = []
    ties: list[str] = []

    for doc_id in doc_ids:
        entries: dict[tuple[str, str], Mistake] = {}
        uf = _UnionFind()
        for aid in annotator_ids:
            for m in annotators[aid].for_doc(doc_id):
                entries[(aid, m.mistake_id)] = m
                uf.add((aid, m.mistake_id))

        for i, gold_aid in enumerate(annotator_ids):
            for reported_aid in annotator_ids[i + 1 :]:
                for first, second in ((gold_aid, reported_aid), (reported_aid, gold_aid)):
                    alignments = align_doc(
                        _as_reported(annotators[second]), annotators[first], doc_id)
                    for a in alignments:
                        if a.criterion is not MatchCriterion.NOT_FOUND:
                            uf.union((second, a.rm_id), (first, a.gsm_id))

        clusters: dict[tuple[str, str], list[tuple[str, Mistake]]] = {}
        for key, m in entries.items():
            clusters.setdefault(uf.find(key), []).append((key[0], m))

        cluster_list = sorted(
            clusters.values(),
            key=lambda members: min((m.span.start, m.span.end, m.mistake_id) for _, m in members),
        )
        for members in cluster_list:
            if len({aid for aid, _ in members}) < quorum:
                continue
            votes = Counter(m.category for _, m in members)
            top = max(votes.values())
            winners = sorted((c for c, n in votes.items() if n == top), key=lambda c: c.rank)
            majority = winners[0]
            chosen = min(
                (m for _, m in members if m.category is majority),
                key=lambda m: (m.span.start, m.span.end),
            )
            if len(winners) > 1:
                ties.append(
                    f"{doc_id}: span {chosen.span.start}-{chosen.span.end} category vote tied "
                    f"between {', '.join(c.value for c in winners)}; kept {majority.value}")
            merged_entries.append(
                Mistake(mistake_id="", doc_id=doc_id, span=chosen.span,
                        text=chosen.text, category=majority))

    merged = renumber_ids(MistakeList.build(Role.GOLD, merged_entries))
    return MergeResult(merged=merged, category_ties=tuple(ties))


def merge(annotators: Mapping[str, MistakeList], quorum: int) -> MistakeList:
    return merge_detailed(annotators, quorum).merged


def _pair_scores(gold: MistakeList, reported: MistakeList) -> ScoreBlock:
    rml = _as_reported(reported)
    per_doc = score_corpus(align_corpus(rml, gold), gold, rml)
    if not per_doc:
        return ScoreBlock(recall=CountedRatio(0, 0), precision=CountedRatio(0, 0))
    return aggregate(per_doc).overall


def agreement(annotators: Mapping[str, MistakeList]) -> AgreementTable:
    """Score every ordered annotator pair, treating the first as gold."""
    if len(annotators) < 2:
        raise ValueError("agreement needs at least 2 annotators")
    rows: list[AgreementRow] = []
    for gold_aid in sorted(annotators):
        for reported_aid in sorted(annotators):
            if gold_aid == reported_aid:
                continue
            block = _pair_scores(annotators[gold_aid], annotators[reported_aid])
            rows.append(AgreementRow(
                gold_annotator=gold_aid,
                reported_annotator=reported_aid,
                precision=block.precision.value,
                recall=block.recall.value,
                f1=block.f1,
            ))
    defined = [row.f1 for row in rows if row.f1 is not None]
    mean_f1 = sum(defined, Fraction(0)) / len(defined) if defined else None
    return AgreementTable(rows=tuple(rows), mean_f1=mean_f1)
