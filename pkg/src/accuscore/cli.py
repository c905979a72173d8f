"""Command-line entry point wiring every module together.

Subcommands: tokenize, validate, align, score, merge, agreement, baseline,
serve. File outputs are written atomically and are byte-deterministic for
identical inputs; --deterministic additionally suppresses the timestamped
run note on stderr so wrapper scripts can capture stable streams.

Exit codes: 0 success, 1 data/validation errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import datetime
import os
import sys
from fractions import Fraction
from pathlib import Path

from .aligner import align_corpus
from .baseline import run_baseline
from .formats import (
    FileFormatError,
    load_corpus,
    load_mistake_csv,
    serialize_agreement_csv,
    serialize_alignment_csv,
    serialize_mistake_csv,
    serialize_score_csv,
    write_text_atomic,
)
from .games import GameDataError, load_games
from .merge import agreement, merge_detailed
from .model import Category, MistakeList, Role, Severity, has_errors, validate_mistake_list
from .scorer import CORPUS_SCOPE, CountedRatio, ScoreBlock, ScoreReport, aggregate, score_corpus
from .tokenizer import tokenize

CORPUS_ENV = "ACCUSCORE_CORPUS"


def _corpus_dir(args: argparse.Namespace, parser: argparse.ArgumentParser) -> Path:
    value = args.corpus or os.environ.get(CORPUS_ENV)
    if not value:
        parser.error(f"--corpus is required (or set {CORPUS_ENV})")
    return Path(value)


def _emit(args: argparse.Namespace, text: str, what: str) -> None:
    """Write an artifact to -o (atomically) or to stdout."""
    if args.output:
        write_text_atomic(args.output, text)
        note = f"wrote {what} to {args.output}"
        if not args.deterministic:
            note += f" at {datetime.datetime.now().isoformat(timespec='seconds')}"
        print(note, file=sys.stderr)
    else:
        sys.stdout.write(text)


def _load_validated(
    path: str, role: Role, corpus, label: str
) -> tuple[MistakeList, bool]:
    """Load a mistake CSV and report validation issues; returns (list, ok)."""
    mistakes = load_mistake_csv(path, role)
    issues = validate_mistake_list(mistakes, corpus)
    for issue in issues:
        print(f"{label}: {issue}", file=sys.stderr)
    return mistakes, not has_errors(issues)


def _ratio_text(ratio: CountedRatio) -> str:
    if ratio.den == 0:
        return f"{ratio.num}/{ratio.den} (undefined)"
    return f"{ratio.num}/{ratio.den} = {float(Fraction(ratio.num, ratio.den)):.4f}"


def _print_score_table(reports: list[ScoreReport]) -> None:
    print(f"{'SCOPE':<24} {'CATEGORY':<14} {'RECALL':<22} {'PRECISION':<22} {'F1':<8}")
    for report in reports:
        rows = [("OVERALL", report.overall)]
        rows.extend((c.value, report.per_category[c]) for c in Category)
        for label, block in rows:
            f1 = block.f1
            f1_text = "-" if f1 is None else f"{float(f1):.4f}"
            print(f"{report.scope:<24} {label:<14} {_ratio_text(block.recall):<22} "
                  f"{_ratio_text(block.precision):<22} {f1_text:<8}")


def cmd_tokenize(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.file == "-":
        raw = sys.stdin.read()
    else:
        raw = Path(args.file).read_text(encoding="utf-8")
    result = tokenize(raw, normalize_punctuation=args.normalize)
    for i, token in enumerate(result.tokens):
        print(f"{i}\t{token}")
    return 0


def cmd_validate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    corpus = load_corpus(_corpus_dir(args, parser))
    role = Role.REPORTED if args.role == "REPORTED" else Role.GOLD
    mistakes = load_mistake_csv(args.file, role)
    issues = validate_mistake_list(mistakes, corpus)
    for issue in issues:
        print(str(issue))
    errors = sum(1 for i in issues if i.severity is Severity.ERROR)
    warnings = len(issues) - errors
    print(f"{len(mistakes)} entries: {errors} error(s), {warnings} warning(s)",
          file=sys.stderr)
    if args.strict and errors:
        return 1
    return 0


def cmd_align(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    corpus = load_corpus(_corpus_dir(args, parser))
    gsml, gold_ok = _load_validated(args.gsml, Role.GOLD, corpus, "gsml")
    rml, reported_ok = _load_validated(args.rml, Role.REPORTED, corpus, "rml")
    if not (gold_ok and reported_ok):
        return 1
    alignments = align_corpus(rml, gsml)
    _emit(args, serialize_alignment_csv(alignments), f"{len(alignments)} alignment(s)")
    return 0


def cmd_score(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    corpus = load_corpus(_corpus_dir(args, parser))
    gsml, gold_ok = _load_validated(args.gsml, Role.GOLD, corpus, "gsml")
    rml, reported_ok = _load_validated(args.rml, Role.REPORTED, corpus, "rml")
    if not (gold_ok and reported_ok):
        return 1
    alignments = align_corpus(rml, gsml)
    per_doc = score_corpus(alignments, gsml, rml)
    if per_doc:
        corpus_report = aggregate(per_doc)
    else:
        zero = ScoreBlock(recall=CountedRatio(0, 0), precision=CountedRatio(0, 0))
        corpus_report = ScoreReport(
            scope=CORPUS_SCOPE, overall=zero, per_category={c: zero for c in Category})
    reports = (per_doc if args.per_doc else []) + [corpus_report]
    _print_score_table(reports)
    if args.output:
        _emit(args, serialize_score_csv(reports), f"{len(reports)} score report(s)")
    return 0


def cmd_merge(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    corpus = load_corpus(_corpus_dir(args, parser))
    annotators: dict[str, MistakeList] = {}
    all_ok = True
    for path in args.annotator:
        annotator_id = Path(path).stem
        if annotator_id in annotators:
            parser.error(f"duplicate annotator id {annotator_id!r} (file {path})")
        mistakes, ok = _load_validated(path, Role.GOLD, corpus, annotator_id)
        annotators[annotator_id] = mistakes
        all_ok = all_ok and ok
    if not 1 <= args.quorum <= len(annotators):
        parser.error(
            f"--quorum must be between 1 and the annotator count ({len(annotators)})")
    if not all_ok:
        return 1
    result = merge_detailed(annotators, args.quorum)
    for note in result.category_ties:
        print(f"note: {note}", file=sys.stderr)
    _emit(args, serialize_mistake_csv(result.merged), f"{len(result.merged)} merged entries")
    return 0


def cmd_agreement(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    corpus = load_corpus(_corpus_dir(args, parser))
    annotators: dict[str, MistakeList] = {}
    all_ok = True
    for path in args.annotator:
        annotator_id = Path(path).stem
        if annotator_id in annotators:
            parser.error(f"duplicate annotator id {annotator_id!r} (file {path})")
        mistakes, ok = _load_validated(path, Role.GOLD, corpus, annotator_id)
        annotators[annotator_id] = mistakes
        all_ok = all_ok and ok
    if len(annotators) < 2:
        parser.error("agreement needs at least 2 --annotator files")
    if not all_ok:
        return 1
    table = agreement(annotators)
    mean = "-" if table.mean_f1 is None else f"{float(table.mean_f1):.4f}"
    print(f"mean pairwise F1: {mean}", file=sys.stderr)
    _emit(args, serialize_agreement_csv(table), f"{len(table.rows)} agreement row(s)")
    return 0


def cmd_baseline(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    corpus_dir = _corpus_dir(args, parser)
    corpus = load_corpus(corpus_dir)
    games_dir = Path(args.games) if args.games else corpus_dir / "games"
    games = load_games(games_dir)
    rml, skipped = run_baseline(corpus, games)
    for doc_id in skipped:
        print(f"note: {doc_id} has no linked game record; skipped", file=sys.stderr)
    _emit(args, serialize_mistake_csv(rml), f"{len(rml)} reported mistake(s)")
    return 0


def cmd_serve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    from .service import serve

    serve(
        corpus_dir=_corpus_dir(args, parser),
        games_dir=Path(args.games) if args.games else None,
        annotations_dir=Path(args.annotations) if args.annotations else None,
        static_dir=Path(args.static) if args.static else None,
        host=args.host,
        port=args.port,
    )
    return 0


def _add_corpus_option(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--corpus", metavar="DIR",
        help=f"corpus directory of <doc_id>.txt files (default: ${CORPUS_ENV})")


def _add_output_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-o", "--output", metavar="FILE",
                     help="write the CSV artifact here (default: stdout)")
    sub.add_argument("--deterministic", action="store_true",
                     help="suppress the timestamped run note on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accuscore",
        description="Span-level accuracy evaluation for generated sports summaries.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("tokenize", help="print one token per line with its index")
    sub.add_argument("file", help="text file to tokenize, or - for stdin")
    sub.add_argument("--normalize", action="store_true",
                     help="split punctuation off raw, untokenized text first")
    sub.set_defaults(func=cmd_tokenize)

    sub = subparsers.add_parser("validate", help="check a mistake-list CSV against the corpus")
    sub.add_argument("file", help="mistake-list CSV")
    sub.add_argument("--role", choices=["GOLD", "REPORTED"], default="GOLD")
    sub.add_argument("--strict", action="store_true",
                     help="exit 1 when any ERROR issue is found")
    _add_corpus_option(sub)
    sub.set_defaults(func=cmd_validate)

    sub = subparsers.add_parser("align", help="align reported mistakes to gold mistakes")
    sub.add_argument("--gsml", required=True, metavar="FILE", help="gold mistake-list CSV")
    sub.add_argument("--rml", required=True, metavar="FILE", help="reported mistake-list CSV")
    _add_corpus_option(sub)
    _add_output_options(sub)
    sub.set_defaults(func=cmd_align)

    sub = subparsers.add_parser("score", help="recall/precision from an alignment run")
    sub.add_argument("--gsml", required=True, metavar="FILE", help="gold mistake-list CSV")
    sub.add_argument("--rml", required=True, metavar="FILE", help="reported mistake-list CSV")
    sub.add_argument("--per-doc", action="store_true", dest="per_doc",
                     help="include per-document rows, not just the corpus roll-up")
    _add_corpus_option(sub)
    _add_output_options(sub)
    sub.set_defaults(func=cmd_score)

    sub = subparsers.add_parser("merge", help="merge several annotators' gold lists")
    sub.add_argument("--annotator", action="append", required=True, metavar="FILE",
                     help="one annotator's gold CSV; repeatable")
    sub.add_argument("--quorum", type=int, required=True,
                     help="minimum distinct annotators per kept mistake")
    _add_corpus_option(sub)
    _add_output_options(sub)
    sub.set_defaults(func=cmd_merge)

    sub = subparsers.add_parser("agreement", help="pairwise inter-annotator agreement")
    sub.add_argument("--annotator", action="append", required=True, metavar="FILE",
                     help="one annotator's gold CSV; repeatable (need at least 2)")
    _add_corpus_option(sub)
    _add_output_options(sub)
    sub.set_defaults(func=cmd_agreement)

    sub = subparsers.add_parser("baseline", help="rule-based fact-checking metric")
    sub.add_argument("--games", metavar="DIR",
                     help="game-record directory (default: <corpus>/games)")
    _add_corpus_option(sub)
    _add_output_options(sub)
    sub.set_defaults(func=cmd_baseline)

    sub = subparsers.add_parser("serve", help="run the annotation HTTP service")
    sub.add_argument("--games", metavar="DIR",
                     help="game-record directory (default: <corpus>/games)")
    sub.add_argument("--annotations", metavar="DIR",
                     help="annotation storage directory (default: <corpus>/annotations)")
    sub.add_argument("--static", metavar="DIR",
                     help="serve this directory (a frontend build) at the web root")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--port", type=int, default=8000)
    _add_corpus_option(sub)
    sub.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (FileFormatError, GameDataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
