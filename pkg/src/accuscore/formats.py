"""Wire formats: mistake-list CSV, corpus directory layout, and report CSVs.

All files are UTF-8. CSV output uses "\n" line endings and minimal quoting so
that serializing the same data twice yields identical bytes. Writes go through
a temp file plus rename, so readers never observe a half-written file.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .aligner import Alignment
from .merge import AgreementTable
from .model import Category, Document, Mistake, MistakeList, Role, TokenSpan
from .scorer import ScoreReport
from .tokenizer import tokenize

MISTAKE_HEADER = ("DOC_ID", "MISTAKE_ID", "START_TOKEN", "END_TOKEN", "TEXT", "CATEGORY")
ALIGNMENT_HEADER = ("DOC_ID", "RM_ID", "GSM_ID", "CRITERION", "OVERLAP")
SCORE_HEADER = (
    "SCOPE", "CATEGORY",
    "RECALL_NUM", "RECALL_DEN", "RECALL",
    "PRECISION_NUM", "PRECISION_DEN", "PRECISION",
    "F1",
)
AGREEMENT_HEADER = ("GOLD_ANNOTATOR", "REPORTED_ANNOTATOR", "PRECISION", "RECALL", "F1")
MANIFEST_HEADER = ("DOC_ID", "SYSTEM_ID", "GAME_ID")

MANIFEST_NAME = "corpus.csv"
REFERENCES_DIR = "references"


class FileFormatError(Exception):
    """A file does not follow its documented format; message names file and line."""

    def __init__(self, source: str, line: int | None, message: str):
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")


def _read_rows(text: str, source: str, header: Sequence[str]) -> list[tuple[int, list[str]]]:
    """Parse CSV text, check the header, and return (line_number, row) pairs."""
    reader = csv.reader(io.StringIO(text, newline=""))
    rows = [(i, row) for i, row in enumerate(reader, start=1) if row]
    if not rows:
        raise FileFormatError(source, 1, f"missing header {','.join(header)}")
    first_line, first = rows[0]
    first = [cell.lstrip("﻿") for cell in first]
    if first != list(header):
        raise FileFormatError(
            source, first_line,
            f"bad header {','.join(first)!r}; expected {','.join(header)!r}")
    body = []
    for line_no, row in rows[1:]:
        if len(row) != len(header):
            raise FileFormatError(
                source, line_no, f"expected {len(header)} fields, found {len(row)}")
        body.append((line_no, row))
    return body


def _parse_int(value: str, source: str, line: int, field: str) -> int:
    try:
        return int(value, 10)
    except ValueError:
        raise FileFormatError(source, line, f"{field} must be a decimal integer, got {value!r}") from None


def parse_mistake_csv(text: str, role: Role, *, source: str = "<string>") -> MistakeList:
    """Parse a mistake-list CSV into a MistakeList with the given role.

    Rows with an empty MISTAKE_ID get an auto-generated `<prefix>-<ordinal>`
    id, unique within their document; explicit ids are preserved as-is.
    """
    raw_entries: list[tuple[int, str, str, int, int, str, Category]] = []
    for line_no, row in _read_rows(text, source, MISTAKE_HEADER):
        doc_id, mistake_id, start_s, end_s, span_text, category_s = row
        if not doc_id:
            raise FileFormatError(source, line_no, "DOC_ID must not be empty")
        start = _parse_int(start_s, source, line_no, "START_TOKEN")
        end = _parse_int(end_s, source, line_no, "END_TOKEN")
        try:
            category = Category.parse(category_s)
        except ValueError as exc:
            raise FileFormatError(source, line_no, str(exc)) from None
        raw_entries.append((line_no, doc_id, mistake_id, start, end, span_text, category))

    used_ids: dict[str, set[str]] = {}
    for _, doc_id, mistake_id, *_rest in raw_entries:
        if mistake_id:
            used_ids.setdefault(doc_id, set()).add(mistake_id)

    next_ordinal: dict[str, int] = {}
    mistakes: list[Mistake] = []
    for _, doc_id, mistake_id, start, end, span_text, category in raw_entries:
        if not mistake_id:
            taken = used_ids.setdefault(doc_id, set())
            n = next_ordinal.get(doc_id, 1)
            while f"{role.id_prefix}-{n}" in taken:
                n += 1
            mistake_id = f"{role.id_prefix}-{n}"
            taken.add(mistake_id)
            next_ordinal[doc_id] = n + 1
        mistakes.append(Mistake(mistake_id, doc_id, TokenSpan(start, end), span_text, category))
    return MistakeList.build(role, mistakes)


def serialize_mistake_csv(mistakes: MistakeList) -> str:
    """Render a MistakeList in canonical order; stable bytes for equal inputs."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(MISTAKE_HEADER)
    for m in mistakes.entries:
        writer.writerow(
            [m.doc_id, m.mistake_id, m.span.start, m.span.end, m.text, m.category.value])
    return out.getvalue()


def load_mistake_csv(path: str | Path, role: Role) -> MistakeList:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise FileFormatError(str(path), None, f"cannot read file: {exc.strerror}") from None
    return parse_mistake_csv(text, role, source=str(path))


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write text to path so readers see either the old or the new content."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def load_corpus(corpus_dir: str | Path) -> dict[str, Document]:
    """Load `<doc_id>.txt` token files plus the optional corpus.csv manifest."""
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise FileFormatError(str(corpus_dir), None, "corpus directory does not exist")

    documents: dict[str, Document] = {}
    for txt_path in sorted(corpus_dir.glob("*.txt")):
        raw = txt_path.read_text(encoding="utf-8")
        documents[txt_path.stem] = Document(
            doc_id=txt_path.stem, raw_text=raw, tokens=tokenize(raw).tokens)

    manifest_path = corpus_dir / MANIFEST_NAME
    if manifest_path.exists():
        rows = _read_rows(
            manifest_path.read_text(encoding="utf-8-sig"), str(manifest_path), MANIFEST_HEADER)
        seen: set[str] = set()
        for line_no, (doc_id, system_id, game_id) in rows:
            if doc_id not in documents:
                raise FileFormatError(
                    str(manifest_path), line_no, f"no document file {doc_id}.txt in corpus")
            if doc_id in seen:
                raise FileFormatError(
                    str(manifest_path), line_no, f"duplicate manifest row for {doc_id}")
            seen.add(doc_id)
            doc = documents[doc_id]
            documents[doc_id] = Document(
                doc_id=doc.doc_id, raw_text=doc.raw_text, tokens=doc.tokens,
                game_ref=game_id or None, system_id=system_id or None)
    return documents


def load_reference_text(corpus_dir: str | Path, doc_id: str) -> str | None:
    """Return the human-written reference text for a document, if present."""
    ref_path = Path(corpus_dir) / REFERENCES_DIR / f"{doc_id}.txt"
    if not ref_path.exists():
        return None
    return ref_path.read_text(encoding="utf-8")


def format_ratio(value: Fraction | None) -> str:
    """Six-decimal ratio for report CSVs; empty string for undefined (0/0)."""
    return "" if value is None else f"{float(value):.6f}"


def serialize_alignment_csv(alignments: Iterable[Alignment]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(ALIGNMENT_HEADER)
    for a in alignments:
        writer.writerow([a.doc_id, a.rm_id, a.gsm_id or "", a.criterion.value, a.overlap])
    return out.getvalue()


def serialize_score_csv(reports: Iterable[ScoreReport]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SCORE_HEADER)
    for report in reports:
        blocks = [("OVERALL", report.overall)]
        blocks.extend((category.value, report.per_category[category]) for category in Category)
        for label, block in blocks:
            writer.writerow([
                report.scope, label,
                block.recall.num, block.recall.den, format_ratio(block.recall.value),
                block.precision.num, block.precision.den, format_ratio(block.precision.value),
                format_ratio(block.f1),
            ])
    return out.getvalue()


def serialize_agreement_csv(table: AgreementTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(AGREEMENT_HEADER)
    for row in table.rows:
        writer.writerow([
            row.gold_annotator, row.reported_annotator,
            format_ratio(row.precision), format_ratio(row.recall), format_ratio(row.f1),
        ])
    writer.writerow(["MEAN", "", "", "", format_ratio(table.mean_f1)])
    return out.getvalue()
