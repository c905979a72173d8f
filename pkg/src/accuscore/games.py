"""Box-score game records: loading, validation, and calendar helpers.

A game record is a JSON file holding the game identity, date, arena, one line
per team (name, win/loss record, total and per-quarter points), and one line
per player (name, team, integer stat columns). Stats a player does not have
are absent, not zero: a zero is a checkable claim, absence is not. Fields
beyond the documented ones are preserved opaquely in `source` and served
as-is to clients.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

_WEEKDAY_NAMES = (
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday",
)


class GameDataError(Exception):
    """A game record is missing fields or internally inconsistent."""


def day_of_week(date: datetime.date) -> str:
    """Civil weekday name for a date, independent of locale."""
    return _WEEKDAY_NAMES[date.weekday()]


@dataclass(frozen=True)
class TeamLine:
    name: str
    wins: int
    losses: int
    total_points: int
    quarter_points: tuple[int, ...] | None = None

    @property
    def first_half_points(self) -> int | None:
        if self.quarter_points is None or len(self.quarter_points) < 2:
            return None
        return self.quarter_points[0] + self.quarter_points[1]

    @property
    def second_half_points(self) -> int | None:
        if self.quarter_points is None or len(self.quarter_points) < 4:
            return None
        return sum(self.quarter_points[2:])


@dataclass(frozen=True)
class PlayerLine:
    name: str
    team: str
    stats: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class GameData:
    game_id: str
    date: datetime.date
    arena: str
    home: TeamLine
    away: TeamLine
    players: tuple[PlayerLine, ...]
    source: Mapping[str, Any]

    @property
    def teams(self) -> tuple[TeamLine, TeamLine]:
        return (self.home, self.away)


def _require(record: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in record or record[key] is None:
        raise GameDataError(f"{where}: missing required field {key!r}")
    return record[key]


def _check_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GameDataError(f"{where}: expected an integer, got {value!r}")
    if value < 0:
        raise GameDataError(f"{where}: must not be negative, got {value}")
    return value


def _parse_team(record: Any, where: str) -> TeamLine:
    if not isinstance(record, dict):
        raise GameDataError(f"{where}: expected an object")
    name = _require(record, "name", where)
    if not isinstance(name, str) or not name.strip():
        raise GameDataError(f"{where}.name: expected a non-empty string")
    wins = _check_int(_require(record, "wins", where), f"{where}.wins")
    losses = _check_int(_require(record, "losses", where), f"{where}.losses")
    total = _check_int(_require(record, "total_points", where), f"{where}.total_points")
    quarters = None
    if record.get("quarter_points") is not None:
        raw = record["quarter_points"]
        if not isinstance(raw, list):
            raise GameDataError(f"{where}.quarter_points: expected a list of integers")
        quarters = tuple(
            _check_int(q, f"{where}.quarter_points[{i}]") for i, q in enumerate(raw))
        if sum(quarters) != total:
            raise GameDataError(
                f"{where}.quarter_points: sum {sum(quarters)} does not match "
                f"total_points {total}")
    return TeamLine(name=name, wins=wins, losses=losses,
                    total_points=total, quarter_points=quarters)


_PLAYER_META_KEYS = {"name", "team"}


def _parse_player(record: Any, teams: tuple[TeamLine, TeamLine], where: str) -> PlayerLine:
    if not isinstance(record, dict):
        raise GameDataError(f"{where}: expected an object")
    name = _require(record, "name", where)
    if not isinstance(name, str) or not name.strip():
        raise GameDataError(f"{where}.name: expected a non-empty string")
    team = _require(record, "team", where)
    team_names = {t.name for t in teams}
    if team not in team_names:
        raise GameDataError(
            f"{where}.team: {team!r} is not one of this game's teams {sorted(team_names)}")
    stats: dict[str, int] = {}
    for key, value in record.items():
        if key in _PLAYER_META_KEYS or value is None:
            continue
        if isinstance(value, str):
            continue  # opaque extra (e.g. position); preserved in source
        stats[key] = _check_int(value, f"{where}.{key}")
    return PlayerLine(name=name, team=team, stats=stats)


def parse_game(record: Any, *, source_name: str = "<record>") -> GameData:
    """Validate a decoded game record; raises GameDataError naming the bad field."""
    if not isinstance(record, dict):
        raise GameDataError(f"{source_name}: top level must be an object")
    game_id = _require(record, "game_id", source_name)
    if not isinstance(game_id, str) or not game_id.strip():
        raise GameDataError(f"{source_name}.game_id: expected a non-empty string")
    date_raw = _require(record, "date", source_name)
    try:
        date = datetime.date.fromisoformat(date_raw)
    except (TypeError, ValueError):
        raise GameDataError(
            f"{source_name}.date: expected an ISO date (YYYY-MM-DD), got {date_raw!r}") from None
    arena = _require(record, "arena", source_name)
    if not isinstance(arena, str) or not arena.strip():
        raise GameDataError(f"{source_name}.arena: expected a non-empty string")
    home = _parse_team(_require(record, "home", source_name), f"{source_name}.home")
    away = _parse_team(_require(record, "away", source_name), f"{source_name}.away")
    if home.name == away.name:
        raise GameDataError(f"{source_name}: home and away teams share the name {home.name!r}")

    players_raw = record.get("players", [])
    if not isinstance(players_raw, list):
        raise GameDataError(f"{source_name}.players: expected a list")
    players = tuple(
        _parse_player(p, (home, away), f"{source_name}.players[{i}]")
        for i, p in enumerate(players_raw))

    for team in (home, away):
        best = max(
            (p.stats.get("points", 0) for p in players if p.team == team.name), default=0)
        if best > team.total_points:
            raise GameDataError(
                f"{source_name}: a player on {team.name!r} has {best} points, more than "
                f"the team total {team.total_points}")
    return GameData(game_id=game_id, date=date, arena=arena, home=home, away=away,
                    players=players, source=record)


def load_game(path: str | Path) -> GameData:
    """Load and validate one game record from `games/<game_id>.json`."""
    path = Path(path)
    try:
        record = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise GameDataError(f"{path}: cannot read file: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GameDataError(f"{path}: invalid JSON: {exc}") from None
    game = parse_game(record, source_name=str(path))
    if game.game_id != path.stem:
        raise GameDataError(
            f"{path}: file name implies game_id {path.stem!r} but record says "
            f"{game.game_id!r}")
    return game


def load_games(games_dir: str | Path) -> dict[str, GameData]:
    """Load every `*.json` record in a directory, keyed by game_id."""
    games_dir = Path(games_dir)
    if not games_dir.is_dir():
        raise GameDataError(f"{games_dir}: games directory does not exist")
    games: dict[str, GameData] = {}
    for path in sorted(games_dir.glob("*.json")):
        game = load_game(path)
        games[game.game_id] = game
    return games
