"""Rule-based accuracy baseline: checks numeric and name claims against game data.

The baseline reads each summary sentence by sentence (a sentence ends at a "."
token) and extracts claims it can ground in the game record:

- a parenthesized ``( W - L )`` right after a team mention is that team's
  win/loss record;
- an unparenthesized ``A - B`` with both values >= 10 is a score pair, checked
  as a multiset against the final, half, and per-quarter scores;
- a number near a stat keyword (points, rebounds, ...) is attributed to the
  nearest preceding player or team mention in the sentence;
- weekday tokens are checked against the game date, and a capitalized run
  around an arena keyword is checked against the game's arena.

The design is precision-first: any claim whose subject or attribute cannot be
resolved is dropped, never guessed, and numbers preceded by season-aggregate
wording ("averaging", "per", ...) are skipped because the game record only
covers a single game. Wrong numbers are reported as NUMBER mistakes and wrong
weekday/arena names as NAME mistakes; the other categories are out of scope
for this metric.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .games import GameData, GameDataError, day_of_week
from .model import Category, Document, Mistake, MistakeList, Role, TokenSpan, renumber_ids


class ClaimKind(Enum):
    NUMERIC = "NUMERIC"
    ENTITY = "ENTITY"
    WEEKDAY = "WEEKDAY"


@dataclass(frozen=True)
class Claim:
    """One checkable statement located at a token span of one document."""

    doc_id: str
    span: TokenSpan
    text: str
    kind: ClaimKind
    subject: str | None = None
    subject_kind: str | None = None  # "team" or "player"
    attribute: str | None = None
    value: int | str | None = None
    counterpart: int | None = None  # the other half of a score pair


_WEEKDAY_TOKENS = frozenset(
    ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"))

_ARENA_KEYWORDS = frozenset(
    ("Arena", "Center", "Centre", "Garden", "Coliseum", "Stadium", "Fieldhouse",
     "Forum", "Pavilion"))

_CAPITALIZED = re.compile(r"^[A-Z][A-Za-z0-9.'&-]*$")

_STAT_KEYWORDS = {
    "point": "points", "points": "points",
    "rebound": "rebounds", "rebounds": "rebounds", "board": "rebounds", "boards": "rebounds",
    "assist": "assists", "assists": "assists",
    "steal": "steals", "steals": "steals",
    "block": "blocks", "blocks": "blocks",
    "turnover": "turnovers", "turnovers": "turnovers",
    "minute": "minutes", "minutes": "minutes",
    "win": "wins", "wins": "wins",
    "loss": "losses", "losses": "losses",
}

_GUARD_WORDS = frozenset(
    ("averaging", "average", "averages", "averaged", "per", "season", "career"))

_UNITS = ("zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
          "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
          "sixteen", "seventeen", "eighteen", "nineteen")
_TENS = {"twenty": 20, "thirty": 30, "forty": 40, "fifty": 50,
         "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90}
_SPELLED = {name: value for value, name in enumerate(_UNITS)}
_SPELLED.update(_TENS)
_SPELLED["hundred"] = 100


def _number_value(token: str) -> int | None:
    """Integer value of a digit token or a spelled-out number up to one hundred."""
    if token.isdigit():
        return int(token)
    lowered = token.lower()
    if lowered in _SPELLED:
        return _SPELLED[lowered]
    if "-" in lowered:
        tens, _, unit = lowered.partition("-")
        if tens in _TENS and unit in _SPELLED and 1 <= _SPELLED[unit] <= 9:
            return _TENS[tens] + _SPELLED[unit]
    return None


def _sentences(tokens: tuple[str, ...]) -> list[tuple[int, int]]:
    """Half-open (start, end) sentence ranges; a "." token ends its sentence."""
    ranges: list[tuple[int, int]] = []
    start = 0
    for i, token in enumerate(tokens):
        if token == ".":
            ranges.append((start, i + 1))
            start = i + 1
    if start < len(tokens):
        ranges.append((start, len(tokens)))
    return ranges


@dataclass(frozen=True)
class _Entity:
    kind: str  # "team" | "player"
    key: str   # canonical full name from the game record


@dataclass(frozen=True)
class _Mention:
    start: int
    end: int  # inclusive
    entity: _Entity


def _build_gazetteer(game: GameData) -> list[tuple[tuple[str, ...], _Entity]]:
    """Name phrases from the game record, longest first for greedy matching."""
    phrases: list[tuple[tuple[str, ...], _Entity]] = []
    for team in game.teams:
        entity = _Entity("team", team.name)
        words = tuple(team.name.split())
        phrases.append((words, entity))
        if len(words) > 1:
            phrases.append((words[-1:], entity))   # nickname, e.g. "Suns"
            phrases.append((words[:-1], entity))   # city, e.g. "Phoenix"
    last_names = Counter(p.name.split()[-1] for p in game.players)
    for player in game.players:
        entity = _Entity("player", player.name)
        words = tuple(player.name.split())
        phrases.append((words, entity))
        if len(words) > 1 and last_names[words[-1]] == 1:
            phrases.append((words[-1:], entity))
    phrases.sort(key=lambda pe: -len(pe[0]))
    return phrases


def _find_mentions(
    tokens: tuple[str, ...], gazetteer: list[tuple[tuple[str, ...], _Entity]]
) -> list[_Mention]:
    mentions: list[_Mention] = []
    i = 0
    while i < len(tokens):
        matched = None
        for words, entity in gazetteer:
            if tuple(tokens[i : i + len(words)]) == words:
                matched = _Mention(i, i + len(words) - 1, entity)
                break
        if matched is not None:
            mentions.append(matched)
            i = matched.end + 1
        else:
            i += 1
    return mentions


def _nearest_mention(
    mentions: list[_Mention], before: int, sent_start: int, kind: str | None = None
) -> _Mention | None:
    best = None
    for mention in mentions:
        if mention.start < sent_start or mention.end >= before:
            continue
        if kind is not None and mention.entity.kind != kind:
            continue
        if best is None or mention.end > best.end:
            best = mention
    return best


def extract_claims(doc: Document, game: GameData) -> list[Claim]:
    """Pull every groundable claim out of one document, in token order."""
    tokens = doc.tokens
    gazetteer = _build_gazetteer(game)
    mentions = _find_mentions(tokens, gazetteer)
    claims: list[Claim] = []
    consumed: set[int] = set()

    def span_claim(start: int, end: int, **kwargs) -> Claim:
        span = TokenSpan(start, end)
        return Claim(doc_id=doc.doc_id, span=span, text=doc.span_text(span), **kwargs)

    for mention in mentions:
        claims.append(span_claim(
            mention.start, mention.end, kind=ClaimKind.ENTITY,
            subject=mention.entity.key, subject_kind=mention.entity.kind,
            attribute=mention.entity.kind, value=" ".join(tokens[mention.start : mention.end + 1])))

    for sent_start, sent_end in _sentences(tokens):
        # Parenthesized ( W - L ) team records.
        for i in range(sent_start, sent_end - 4):
            if (tokens[i] == "(" and tokens[i + 4] == ")" and tokens[i + 2] == "-"
                    and _number_value(tokens[i + 1]) is not None
                    and _number_value(tokens[i + 3]) is not None):
                consumed.update((i + 1, i + 3))
                team = _nearest_mention(mentions, i, sent_start, kind="team")
                if team is None:
                    continue
                for offset, attribute in ((1, "wins"), (3, "losses")):
                    claims.append(span_claim(
                        i + offset, i + offset, kind=ClaimKind.NUMERIC,
                        subject=team.entity.key, subject_kind="team", attribute=attribute,
                        value=_number_value(tokens[i + offset])))

        # Unparenthesized A - B score pairs (two-digit values only).
        depth = 0
        for i in range(sent_start, sent_end):
            if tokens[i] == "(":
                depth += 1
            elif tokens[i] == ")":
                depth = max(0, depth - 1)
            if depth > 0 or i + 2 >= sent_end or i in consumed or i + 2 in consumed:
                continue
            a, b = _number_value(tokens[i]), _number_value(tokens[i + 2])
            if tokens[i + 1] == "-" and a is not None and b is not None and a >= 10 and b >= 10:
                consumed.update((i, i + 2))
                claims.append(span_claim(
                    i, i, kind=ClaimKind.NUMERIC, attribute="score", value=a, counterpart=b))
                claims.append(span_claim(
                    i + 2, i + 2, kind=ClaimKind.NUMERIC, attribute="score", value=b,
                    counterpart=a))

        # Weekday names.
        for i in range(sent_start, sent_end):
            if tokens[i] in _WEEKDAY_TOKENS:
                claims.append(span_claim(
                    i, i, kind=ClaimKind.WEEKDAY, attribute="weekday", value=tokens[i]))

        # Arena names: a capitalized run around an arena keyword.
        arena_claimed: set[int] = set()
        for i in range(sent_start, sent_end):
            if tokens[i] not in _ARENA_KEYWORDS or i in arena_claimed:
                continue
            start = i
            while start - 1 >= sent_start and _CAPITALIZED.match(tokens[start - 1]):
                start -= 1
            end = i
            while end + 1 < sent_end and _CAPITALIZED.match(tokens[end + 1]):
                end += 1
            arena_claimed.update(range(start, end + 1))
            claims.append(span_claim(
                start, end, kind=ClaimKind.ENTITY, attribute="arena",
                value=" ".join(tokens[start : end + 1])))

        # Remaining numbers near a stat keyword, attributed to the nearest
        # preceding mention.
        for i in range(sent_start, sent_end):
            value = _number_value(tokens[i])
            if value is None or i in consumed:
                continue
            guard_window = range(max(sent_start, i - 3), i)
            if any(tokens[j].lower() in _GUARD_WORDS for j in guard_window):
                continue
            attribute = None
            for j in list(range(i + 1, min(i + 4, sent_end))) + list(
                    range(i - 1, max(i - 4, sent_start - 1), -1)):
                if tokens[j].lower() in _STAT_KEYWORDS:
                    attribute = _STAT_KEYWORDS[tokens[j].lower()]
                    break
            mention = _nearest_mention(mentions, i, sent_start)
            claims.append(span_claim(
                i, i, kind=ClaimKind.NUMERIC,
                subject=mention.entity.key if mention else None,
                subject_kind=mention.entity.kind if mention else None,
                attribute=attribute, value=value))

    claims.sort(key=lambda c: (c.span.start, c.span.end, c.kind.value, c.attribute or ""))
    return claims


def _acceptable_score_pairs(game: GameData) -> set[tuple[int, int]]:
    pairs = {tuple(sorted((game.home.total_points, game.away.total_points)))}
    for attr in ("first_half_points", "second_half_points"):
        h, a = getattr(game.home, attr), getattr(game.away, attr)
        if h is not None and a is not None:
            pairs.add(tuple(sorted((h, a))))
    if game.home.quarter_points and game.away.quarter_points:
        for hq, aq in zip(game.home.quarter_points, game.away.quarter_points):
            pairs.add(tuple(sorted((hq, aq))))
    return pairs


def check_claims(claims: Iterable[Claim], game: GameData) -> MistakeList:
    """Compare claims against the game record; wrong ones become REPORTED mistakes."""
    teams = {t.name: t for t in game.teams}
    players = {p.name: p for p in game.players}
    score_pairs = _acceptable_score_pairs(game)
    entries: list[Mistake] = []

    def report(claim: Claim, category: Category) -> None:
        entries.append(Mistake(
            mistake_id="", doc_id=claim.doc_id, span=claim.span,
            text=claim.text, category=category))

    for claim in claims:
        if claim.kind is ClaimKind.WEEKDAY:
            if claim.value != day_of_week(game.date):
                report(claim, Category.NAME)
        elif claim.kind is ClaimKind.ENTITY:
            if claim.attribute == "arena" and claim.value != game.arena:
                report(claim, Category.NAME)
        elif claim.attribute == "score":
            if tuple(sorted((claim.value, claim.counterpart))) not in score_pairs:
                report(claim, Category.NUMBER)
        else:
            if claim.subject is None or claim.attribute is None:
                continue
            if claim.subject_kind == "team":
                team = teams.get(claim.subject)
                actual = {
                    "wins": team.wins, "losses": team.losses, "points": team.total_points,
                }.get(claim.attribute) if team else None
            else:
                player = players.get(claim.subject)
                actual = player.stats.get(claim.attribute) if player else None
            if actual is not None and actual != claim.value:
                report(claim, Category.NUMBER)

    return renumber_ids(MistakeList.build(Role.REPORTED, entries))


def check_document(doc: Document, game: GameData) -> MistakeList:
    """Extract and check claims for one document."""
    return check_claims(extract_claims(doc, game), game)


def run_baseline(
    corpus: Mapping[str, Document], games: Mapping[str, GameData]
) -> tuple[MistakeList, list[str]]:
    """Check every document with linked game data; returns (RML, skipped doc ids)."""
    entries: list[Mistake] = []
    skipped: list[str] = []
    for doc_id in sorted(corpus):
        doc = corpus[doc_id]
        if doc.game_ref is None:
            skipped.append(doc_id)
            continue
        if doc.game_ref not in games:
            raise GameDataError(
                f"document {doc_id!r} links to game {doc.game_ref!r} but no such "
                f"game record is loaded")
        entries.extend(check_document(doc, games[doc.game_ref]).entries)
    return renumber_ids(MistakeList.build(Role.REPORTED, entries)), skipped
