"""Core data types: documents, mistake categories, token spans, and mistake lists.

A mistake is a contiguous token span in one document plus a category. Mistake
lists play one of two roles: GOLD (the adjudicated truth) or REPORTED (what an
evaluation technique claims). All types are immutable after construction and
validation is a pure function, so everything here is safe to share across
threads.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Iterator, Mapping


class Category(Enum):
    """The six mistake categories, in canonical order."""

    NUMBER = "NUMBER"
    NAME = "NAME"
    WORD = "WORD"
    CONTEXT = "CONTEXT"
    NOT_CHECKABLE = "NOT_CHECKABLE"
    OTHER = "OTHER"

    @property
    def rank(self) -> int:
        """Position in the canonical order, used for sorting and tie-breaks."""
        return _CATEGORY_RANK[self]

    @classmethod
    def parse(cls, text: str) -> "Category":
        """Parse a category from its canonical, long, or short spelling.

        Case-insensitive; spaces and hyphens are interchangeable with
        underscores. Anything outside the known spellings is an error.
        """
        key = re.sub(r"[\s\-]+", "_", text.strip().upper())
        try:
            return _CATEGORY_ALIASES[key]
        except KeyError:
            canonical = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown category {text!r}; expected one of: {canonical}") from None


_CATEGORY_RANK = {c: i for i, c in enumerate(Category)}

_CATEGORY_ALIASES = {
    "NUMBER": Category.NUMBER,
    "INCORRECT_NUMBER": Category.NUMBER,
    "NAME": Category.NAME,
    "INCORRECT_NAME": Category.NAME,
    "NAMED_ENTITY": Category.NAME,
    "INCORRECT_NAMED_ENTITY": Category.NAME,
    "WORD": Category.WORD,
    "INCORRECT_WORD": Category.WORD,
    "CONTEXT": Category.CONTEXT,
    "CONTEXT_ERROR": Category.CONTEXT,
    "NOT_CHECKABLE": Category.NOT_CHECKABLE,
    "OTHER": Category.OTHER,
}


class Role(Enum):
    """Which side of the evaluation a mistake list plays."""

    GOLD = "GOLD"
    REPORTED = "REPORTED"

    @property
    def id_prefix(self) -> str:
        return "GSM" if self is Role.GOLD else "RM"


@dataclass(frozen=True, order=True)
class TokenSpan:
    """A contiguous token range, 0-based and inclusive on both ends.

    Construction does not validate; file input may carry malformed spans and
    the validator reports them as issues rather than exceptions.
    """

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def is_well_formed(self) -> bool:
        return 0 <= self.start <= self.end


@dataclass(frozen=True)
class Mistake:
    """One annotated error: a span in a document, its surface text, a category."""

    mistake_id: str
    doc_id: str
    span: TokenSpan
    text: str
    category: Category


@dataclass(frozen=True)
class Document:
    """A tokenized summary with optional links to its game and generator."""

    doc_id: str
    raw_text: str
    tokens: tuple[str, ...]
    game_ref: str | None = None
    system_id: str | None = None

    def span_text(self, span: TokenSpan) -> str:
        return " ".join(self.tokens[span.start : span.end + 1])


def _entry_key(m: Mistake) -> tuple:
    return (m.doc_id, m.span.start, m.span.end, m.category.rank, m.mistake_id)


@dataclass(frozen=True)
class MistakeList:
    """An ordered mistake collection over a corpus, playing the GOLD or REPORTED role.

    Entries are kept in canonical order: grouped by doc_id (lexicographic),
    then by (start, end, category, mistake_id) within a document. Overlapping
    spans are representable; the validator flags them as warnings.
    """

    role: Role
    entries: tuple[Mistake, ...]

    @classmethod
    def build(cls, role: Role, entries: Iterable[Mistake]) -> "MistakeList":
        return cls(role=role, entries=tuple(sorted(entries, key=_entry_key)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Mistake]:
        return iter(self.entries)

    def doc_ids(self) -> tuple[str, ...]:
        return tuple(sorted({m.doc_id for m in self.entries}))

    def for_doc(self, doc_id: str) -> tuple[Mistake, ...]:
        return tuple(m for m in self.entries if m.doc_id == doc_id)

    def by_doc(self) -> dict[str, tuple[Mistake, ...]]:
        grouped: dict[str, list[Mistake]] = {}
        for m in self.entries:
            grouped.setdefault(m.doc_id, []).append(m)
        return {doc_id: tuple(ms) for doc_id, ms in sorted(grouped.items())}


def renumber_ids(mistakes: MistakeList) -> MistakeList:
    """Reassign `<prefix>-<ordinal>` ids per document, in canonical entry order."""
    renumbered: list[Mistake] = []
    ordinal: dict[str, int] = {}
    for m in mistakes.entries:
        n = ordinal.get(m.doc_id, 0) + 1
        ordinal[m.doc_id] = n
        renumbered.append(replace(m, mistake_id=f"{mistakes.role.id_prefix}-{n}"))
    return MistakeList.build(mistakes.role, renumbered)


class Severity(Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"


@dataclass(frozen=True)
class ValidationIssue:
    severity: Severity
    code: str
    doc_id: str | None
    mistake_id: str | None
    message: str

    def __str__(self) -> str:
        where = " ".join(
            part for part in (f"doc={self.doc_id}" if self.doc_id else "",
                              f"id={self.mistake_id}" if self.mistake_id else "")
            if part
        )
        return f"{self.severity.value} [{self.code}] {where}: {self.message}".replace(" :", ":")


def _error(code: str, doc_id: str | None, mistake_id: str | None, message: str) -> ValidationIssue:
    return ValidationIssue(Severity.ERROR, code, doc_id, mistake_id, message)


def _warning(code: str, doc_id: str | None, mistake_id: str | None, message: str) -> ValidationIssue:
    return ValidationIssue(Severity.WARNING, code, doc_id, mistake_id, message)


def validate_mistake_list(
    mistakes: MistakeList, corpus: Mapping[str, Document]
) -> list[ValidationIssue]:
    """Check every entry against its document; pure, deterministic.

    ERROR issues: unknown document, inverted span, span out of range, surface
    text not matching the document tokens, duplicate ids, duplicate
    (span, category) entries. WARNING issues: overlapping spans within the
    same document and list. An empty result means the list is fully valid.
    """
    issues: list[ValidationIssue] = []
    for doc_id, entries in mistakes.by_doc().items():
        doc = corpus.get(doc_id)
        if doc is None:
            issues.append(
                _error("unknown-doc", doc_id, None,
                       f"document not in corpus ({len(entries)} entries affected)")
            )
            continue

        span_ok: dict[str, bool] = {}
        for m in entries:
            if m.span.start > m.span.end:
                issues.append(
                    _error("inverted-span", doc_id, m.mistake_id,
                           f"start {m.span.start} > end {m.span.end}")
                )
                span_ok[m.mistake_id] = False
                continue
            if m.span.start < 0 or m.span.end >= len(doc.tokens):
                issues.append(
                    _error("span-out-of-range", doc_id, m.mistake_id,
                           f"span {m.span.start}-{m.span.end} outside document "
                           f"of {len(doc.tokens)} tokens")
                )
                span_ok[m.mistake_id] = False
                continue
            span_ok[m.mistake_id] = True
            expected = doc.span_text(m.span)
            if m.text != expected:
                issues.append(
                    _error("text-mismatch", doc_id, m.mistake_id,
                           f"text {m.text!r} does not match document span "
                           f"{m.span.start}-{m.span.end} (expected {expected!r})")
                )

        id_counts = Counter(m.mistake_id for m in entries)
        for mistake_id, count in sorted(id_counts.items()):
            if count > 1:
                issues.append(
                    _error("duplicate-id", doc_id, mistake_id,
                           f"mistake id used {count} times in this document")
                )

        triple_counts = Counter((m.span.start, m.span.end, m.category) for m in entries)
        for (start, end, category), count in sorted(
            triple_counts.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2].rank)
        ):
            if count > 1:
                issues.append(
                    _error("duplicate-entry", doc_id, None,
                           f"{count} entries share span {start}-{end} and "
                           f"category {category.value}")
                )

        for i, a in enumerate(entries):
            if not span_ok.get(a.mistake_id, False):
                continue
            for b in entries[i + 1 :]:
                if not span_ok.get(b.mistake_id, False):
                    continue
                if b.span.start > a.span.end:
                    break
                issues.append(
                    _warning("overlapping-spans", doc_id, a.mistake_id,
                             f"span {a.span.start}-{a.span.end} overlaps "
                             f"{b.mistake_id} at {b.span.start}-{b.span.end}")
                )
    return issues


def has_errors(issues: Iterable[ValidationIssue]) -> bool:
    return any(i.severity is Severity.ERROR for i in issues)
