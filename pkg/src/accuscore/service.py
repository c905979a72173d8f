"""HTTP service backing the annotation workflow.

Serves the corpus, game records, and per-annotator mistake lists, and persists
submitted annotations. Storage is one CSV per (annotator, document) under
`annotations/<annotator_id>/<doc_id>.csv`, in the same format the rest of the
toolchain reads, plus a `<doc_id>.submitted` marker once an annotator locks a
document. Writes are atomic and serialized per (annotator, document); reads
never block.
"""

from __future__ import annotations

import re
import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .formats import (
    load_corpus,
    load_mistake_csv,
    load_reference_text,
    serialize_mistake_csv,
    write_text_atomic,
)
from .games import GameData, load_games
from .model import (
    Category,
    Document,
    Mistake,
    MistakeList,
    Role,
    Severity,
    TokenSpan,
    ValidationIssue,
    renumber_ids,
    validate_mistake_list,
)

_ANNOTATOR_ID = re.compile(r"^[A-Za-z0-9_-]{1,64}$")

STATUS_NONE = "NONE"
STATUS_IN_PROGRESS = "IN_PROGRESS"
STATUS_SUBMITTED = "SUBMITTED"


class EntryIn(BaseModel):
    start_token: int
    end_token: int
    category: str


def _issue_payload(issue: ValidationIssue) -> dict[str, Any]:
    return {
        "severity": issue.severity.value,
        "code": issue.code,
        "doc_id": issue.doc_id,
        "mistake_id": issue.mistake_id,
        "message": issue.message,
    }


def _issues_response(issues: list[ValidationIssue]) -> JSONResponse:
    return JSONResponse(status_code=422, content={"issues": [_issue_payload(i) for i in issues]})


def _error_response(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": message})


class _Store:
    """Annotation persistence with per-(annotator, doc) write serialization."""

    def __init__(self, annotations_dir: Path):
        self.annotations_dir = annotations_dir
        self._locks: dict[tuple[str, str], threading.Lock] = {}
        self._guard = threading.Lock()

    def lock_for(self, annotator: str, doc_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault((annotator, doc_id), threading.Lock())

    def csv_path(self, annotator: str, doc_id: str) -> Path:
        return self.annotations_dir / annotator / f"{doc_id}.csv"

    def marker_path(self, annotator: str, doc_id: str) -> Path:
        return self.annotations_dir / annotator / f"{doc_id}.submitted"

    def status(self, annotator: str, doc_id: str) -> str:
        if self.marker_path(annotator, doc_id).exists():
            return STATUS_SUBMITTED
        if self.csv_path(annotator, doc_id).exists():
            return STATUS_IN_PROGRESS
        return STATUS_NONE

    def load(self, annotator: str, doc_id: str) -> MistakeList:
        path = self.csv_path(annotator, doc_id)
        if not path.exists():
            return MistakeList.build(Role.GOLD, [])
        return load_mistake_csv(path, Role.GOLD)

    def save(self, annotator: str, doc_id: str, mistakes: MistakeList) -> None:
        write_text_atomic(self.csv_path(annotator, doc_id), serialize_mistake_csv(mistakes))

    def mark_submitted(self, annotator: str, doc_id: str) -> None:
        if not self.csv_path(annotator, doc_id).exists():
            self.save(annotator, doc_id, MistakeList.build(Role.GOLD, []))
        write_text_atomic(self.marker_path(annotator, doc_id), "SUBMITTED\n")


def create_app(
    corpus_dir: str | Path,
    games_dir: str | Path | None = None,
    annotations_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service around one corpus directory.

    `games_dir` defaults to `<corpus>/games` and `annotations_dir` to
    `<corpus>/annotations`. When `static_dir` is given, its files (an
    annotation frontend build) are served at the web root.
    """
    corpus_dir = Path(corpus_dir)
    corpus: dict[str, Document] = load_corpus(corpus_dir)
    references = {doc_id: load_reference_text(corpus_dir, doc_id) for doc_id in corpus}

    games_dir = Path(games_dir) if games_dir is not None else corpus_dir / "games"
    games: dict[str, GameData] = load_games(games_dir) if games_dir.is_dir() else {}

    annotations_dir = (
        Path(annotations_dir) if annotations_dir is not None else corpus_dir / "annotations")
    store = _Store(annotations_dir)

    app = FastAPI(title="accuscore annotation service")

    @app.get("/api/docs")
    def list_docs(annotator: str | None = None):
        if annotator is not None and not _ANNOTATOR_ID.match(annotator):
            return _error_response(422, "annotator id must match [A-Za-z0-9_-]{1,64}")
        return [
            {
                "doc_id": doc_id,
                "system_id": corpus[doc_id].system_id,
                "token_count": len(corpus[doc_id].tokens),
                "annotation_status": (
                    store.status(annotator, doc_id) if annotator else STATUS_NONE),
            }
            for doc_id in sorted(corpus)
        ]

    @app.get("/api/docs/{doc_id}")
    def get_doc(doc_id: str):
        doc = corpus.get(doc_id)
        if doc is None:
            return _error_response(404, f"unknown document {doc_id!r}")
        return {
            "doc_id": doc.doc_id,
            "tokens": list(doc.tokens),
            "game_id": doc.game_ref,
            "reference_text": references.get(doc_id),
        }

    @app.get("/api/games/{game_id}")
    def get_game(game_id: str):
        game = games.get(game_id)
        if game is None:
            return _error_response(404, f"unknown game {game_id!r}")
        return game.source

    @app.get("/api/annotations/{annotator}/{doc_id}")
    def get_annotations(annotator: str, doc_id: str):
        if not _ANNOTATOR_ID.match(annotator):
            return _error_response(422, "annotator id must match [A-Za-z0-9_-]{1,64}")
        if doc_id not in corpus:
            return _error_response(404, f"unknown document {doc_id!r}")
        entries = store.load(annotator, doc_id).for_doc(doc_id)
        return {
            "doc_id": doc_id,
            "annotator": annotator,
            "status": store.status(annotator, doc_id),
            "entries": [
                {
                    "mistake_id": m.mistake_id,
                    "start_token": m.span.start,
                    "end_token": m.span.end,
                    "text": m.text,
                    "category": m.category.value,
                }
                for m in entries
            ],
        }

    @app.post("/api/annotations/{annotator}/{doc_id}")
    def put_annotations(annotator: str, doc_id: str, entries: list[EntryIn]):
        if not _ANNOTATOR_ID.match(annotator):
            return _error_response(422, "annotator id must match [A-Za-z0-9_-]{1,64}")
        doc = corpus.get(doc_id)
        if doc is None:
            return _error_response(404, f"unknown document {doc_id!r}")

        issues: list[ValidationIssue] = []
        mistakes: list[Mistake] = []
        for i, entry in enumerate(entries, start=1):
            mistake_id = f"{Role.GOLD.id_prefix}-{i}"
            try:
                category = Category.parse(entry.category)
            except ValueError as exc:
                issues.append(ValidationIssue(
                    Severity.ERROR, "bad-category", doc_id, mistake_id, str(exc)))
                continue
            span = TokenSpan(entry.start_token, entry.end_token)
            in_range = (
                span.is_well_formed() and span.end < len(doc.tokens))
            mistakes.append(Mistake(
                mistake_id=mistake_id, doc_id=doc_id, span=span,
                text=doc.span_text(span) if in_range else "", category=category))

        draft = MistakeList.build(Role.GOLD, mistakes)
        hard = [
            issue for issue in issues + validate_mistake_list(draft, corpus)
            if issue.severity is Severity.ERROR
        ]
        if hard:
            return _issues_response(hard)

        with store.lock_for(annotator, doc_id):
            if store.status(annotator, doc_id) == STATUS_SUBMITTED:
                return _error_response(
                    409, f"document {doc_id!r} is already submitted by {annotator!r}")
            store.save(annotator, doc_id, renumber_ids(draft))
        return {
            "doc_id": doc_id,
            "annotator": annotator,
            "status": STATUS_IN_PROGRESS,
            "entry_count": len(draft),
        }

    @app.post("/api/annotations/{annotator}/{doc_id}/submit")
    def submit_annotations(annotator: str, doc_id: str):
        if not _ANNOTATOR_ID.match(annotator):
            return _error_response(422, "annotator id must match [A-Za-z0-9_-]{1,64}")
        if doc_id not in corpus:
            return _error_response(404, f"unknown document {doc_id!r}")
        with store.lock_for(annotator, doc_id):
            store.mark_submitted(annotator, doc_id)
        return {"doc_id": doc_id, "annotator": annotator, "status": STATUS_SUBMITTED}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def serve(
    corpus_dir: str | Path,
    games_dir: str | Path | None = None,
    annotations_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
    host: str = "127.0.0.1",
    port: int = 8000,
) -> None:
    """Run the service under uvicorn; blocks until interrupted."""
    import uvicorn

    app = create_app(corpus_dir, games_dir, annotations_dir, static_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
