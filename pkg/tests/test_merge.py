"""Adjudication tests: clustering, quorum, majority vote, and annotator agreement."""

from fractions import Fraction

import pytest

from accuscore.merge import AgreementRow, agreement, merge, merge_detailed
from accuscore.model import (
    Category,
    Mistake,
    MistakeList,
    Role,
    validate_mistake_list,
)


def _gold(entries):
    return MistakeList.build(Role.GOLD, entries)


def _mk(mistake_id, start, end, category, text="", doc_id="d"):
    from accuscore.model import TokenSpan

    return Mistake(mistake_id, doc_id, TokenSpan(start, end), text, category)


def _entry_shapes(mistakes):
    return [(m.doc_id, m.span.start, m.span.end, m.category, m.text) for m in mistakes]


class TestMerge:
    def test_single_annotator_quorum_one_is_identity(self, gold_composite):
        merged = merge({"a": gold_composite}, quorum=1)
        assert merged.role is Role.GOLD
        assert _entry_shapes(merged) == _entry_shapes(gold_composite)
        assert [m.mistake_id for m in merged] == [f"GSM-{i + 1}" for i in range(10)]

    def test_unanimous_entries_merge_to_one(self):
        annotators = {
            aid: _gold([_mk("GSM-1", 8, 8, Category.NAME, "Thursday")])
            for aid in ("a", "b", "c")
        }
        merged = merge(annotators, quorum=3)
        assert _entry_shapes(merged) == [("d", 8, 8, Category.NAME, "Thursday")]

    def test_majority_category_and_smallest_majority_span(self):
        annotators = {
            "a": _gold([_mk("GSM-1", 14, 16, Category.WORD, "game - high")]),
            "b": _gold([_mk("GSM-1", 14, 16, Category.WORD, "game - high")]),
            "c": _gold([_mk("GSM-1", 13, 16, Category.NUMBER, "a game - high")]),
        }
        result = merge_detailed(annotators, quorum=2)
        assert _entry_shapes(result.merged) == [
            ("d", 14, 16, Category.WORD, "game - high")
        ]
        assert result.category_ties == ()

    def test_span_comes_from_a_majority_member(self):
        # The minority span must not leak in even when it is smaller.
        annotators = {
            "a": _gold([_mk("GSM-1", 2, 5, Category.WORD)]),
            "b": _gold([_mk("GSM-1", 2, 5, Category.WORD)]),
            "c": _gold([_mk("GSM-1", 2, 3, Category.NUMBER)]),
        }
        merged = merge(annotators, quorum=2)
        assert _entry_shapes(merged) == [("d", 2, 5, Category.WORD, "")]

    def test_quorum_drops_unsupported_entries(self):
        annotators = {
            "a": _gold(
                [
                    _mk("GSM-1", 0, 0, Category.WORD),
                    _mk("GSM-2", 9, 9, Category.NUMBER),
                ]
            ),
            "b": _gold([_mk("GSM-1", 0, 0, Category.WORD)]),
        }
        at_two = merge(annotators, quorum=2)
        assert _entry_shapes(at_two) == [("d", 0, 0, Category.WORD, "")]
        at_one = merge(annotators, quorum=1)
        assert len(at_one) == 2

    def test_overlap_chains_cluster_transitively(self):
        # a-b overlap and b-c overlap put all three in one cluster even though
        # a and c are disjoint; the chosen span is attested, never the envelope.
        annotators = {
            "a": _gold([_mk("GSM-1", 0, 1, Category.WORD)]),
            "b": _gold([_mk("GSM-1", 1, 2, Category.WORD)]),
            "c": _gold([_mk("GSM-1", 2, 3, Category.WORD)]),
        }
        merged = merge(annotators, quorum=3)
        assert _entry_shapes(merged) == [("d", 0, 1, Category.WORD, "")]

    def test_category_tie_breaks_to_canonical_order_and_is_reported(self):
        annotators = {
            "a": _gold([_mk("GSM-1", 0, 0, Category.WORD)]),
            "b": _gold([_mk("GSM-1", 0, 0, Category.NUMBER)]),
        }
        result = merge_detailed(annotators, quorum=2)
        assert _entry_shapes(result.merged) == [("d", 0, 0, Category.NUMBER, "")]
        assert len(result.category_ties) == 1
        note = result.category_ties[0]
        assert "tied" in note and "kept NUMBER" in note and "0-0" in note

    def test_merged_ids_are_renumbered_per_doc(self):
        annotators = {
            "a": _gold(
                [
                    _mk("GSM-7", 0, 0, Category.WORD, doc_id="x"),
                    _mk("GSM-3", 0, 0, Category.WORD, doc_id="y"),
                ]
            ),
        }
        merged = merge(annotators, quorum=1)
        assert [(m.doc_id, m.mistake_id) for m in merged] == [
            ("x", "GSM-1"), ("y", "GSM-1"),
        ]

    def test_merged_fixture_lists_validate_clean(self, corpus, gold_example):
        rotated = _gold(
            [
                _mk("GSM-1", 4, 6, Category.NAME, "the Miami Heat", "nuggets-heat"),
                _mk("GSM-2", 8, 8, Category.NAME, "Thursday", "nuggets-heat"),
            ]
        )
        merged = merge({"a": gold_example, "b": rotated}, quorum=2)
        assert validate_mistake_list(merged, corpus) == []
        assert len(merged) == 2

    def test_rejects_bad_quorum(self, gold_example):
        with pytest.raises(ValueError, match="quorum"):
            merge({"a": gold_example}, quorum=0)
        with pytest.raises(ValueError, match="quorum"):
            merge({"a": gold_example}, quorum=2)

    def test_rejects_no_annotators(self):
        with pytest.raises(ValueError, match="annotator"):
            merge({}, quorum=1)


class TestAgreement:
    def test_identical_annotators_agree_perfectly(self, gold_composite):
        table = agreement({"a": gold_composite, "b": gold_composite})
        assert len(table.rows) == 2
        for row in table.rows:
            assert row.precision == Fraction(1)
            assert row.recall == Fraction(1)
            assert row.f1 == Fraction(1)
        assert table.mean_f1 == Fraction(1)

    def test_golden_pair(self, gold_example, reported_example):
        # Both lists must carry the GOLD role here; each takes the reported
        # side in one direction.
        other = _gold(
            [
                Mistake(m.mistake_id, m.doc_id, m.span, m.text, m.category)
                for m in reported_example
            ]
        )
        table = agreement({"g": gold_example, "r": other})
        assert [(r.gold_annotator, r.reported_annotator) for r in table.rows] == [
            ("g", "r"), ("r", "g"),
        ]
        assert table.rows[0] == AgreementRow(
            "g", "r", precision=Fraction(3, 4), recall=Fraction(1), f1=Fraction(6, 7)
        )
        assert table.rows[1] == AgreementRow(
            "r", "g", precision=Fraction(1), recall=Fraction(3, 4), f1=Fraction(6, 7)
        )
        assert table.mean_f1 == Fraction(6, 7)

    def test_disjoint_annotators_score_zero(self):
        table = agreement(
            {
                "a": _gold([_mk("GSM-1", 0, 0, Category.WORD)]),
                "b": _gold([_mk("GSM-1", 9, 9, Category.WORD)]),
            }
        )
        for row in table.rows:
            assert row.f1 == Fraction(0)
        assert table.mean_f1 == Fraction(0)

    def test_empty_annotator_gives_undefined_scores(self, gold_example):
        table = agreement({"a": gold_example, "b": _gold([])})
        by_pair = {(r.gold_annotator, r.reported_annotator): r for r in table.rows}
        assert by_pair[("a", "b")].precision is None
        assert by_pair[("a", "b")].recall == Fraction(0)
        assert by_pair[("a", "b")].f1 is None
        assert by_pair[("b", "a")].recall is None
        assert by_pair[("b", "a")].precision == Fraction(0)
        assert table.mean_f1 is None

    def test_requires_two_annotators(self, gold_example):
        with pytest.raises(ValueError, match="at least 2"):
            agreement({"a": gold_example})

    def test_three_annotators_give_six_ordered_rows(self, gold_example):
        table = agreement({"a": gold_example, "b": gold_example, "c": gold_example})
        assert len(table.rows) == 6
        assert table.mean_f1 == Fraction(1)
