"""JSON game files.

    {"targets": [{"name": "t1", "dc": "1", "du": "0", "ac": "0", "au": "1"}, ...],
     "resources": [{"schedules": [[0, 1], [2, 3], []]}],
     "attacker_resources": 1}

Rationals are ints or "p/q" strings; schedule entries are 0-based targets.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .core import SecurityGame, TargetPayoffs
from .errors import GameFormatError, InvalidGame


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_decimal(x, places=6) -> str:
    """Round-half-even decimal rendering with a fixed number of places."""
    x = Fraction(x)
    scale = 10**places
    q = round(abs(x) * scale)
    sign = "-" if x < 0 and q else ""
    return f"{sign}{q // scale}.{q % scale:0{places}d}"


def fmt_both(x) -> str:
    return f"{fmt_rational(x)} ({fmt_decimal(x)})"


def _rational(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise GameFormatError(f"{where}: expected an integer or a 'p/q' string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise GameFormatError(f"{where}: bad rational {v!r}") from exc


def game_from_dict(obj) -> SecurityGame:
    if not isinstance(obj, dict):
        raise GameFormatError("game must be a JSON object")
    unknown = set(obj) - {"targets", "resources", "attacker_resources"}
    if unknown:
        raise GameFormatError(f"unknown keys: {sorted(unknown)}")
    try:
        raw_targets = obj["targets"]
        raw_resources = obj["resources"]
    except KeyError as exc:
        raise GameFormatError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(raw_targets, list) or not isinstance(raw_resources, list):
        raise GameFormatError("targets and resources must be lists")
    targets = []
    for i, t in enumerate(raw_targets):
        if not isinstance(t, dict):
            raise GameFormatError(f"target {i} must be an object")
        try:
            vals = [_rational(t[k], f"target {i}.{k}") for k in ("dc", "du", "ac", "au")]
        except KeyError as exc:
            raise GameFormatError(f"target {i} lacks {exc.args[0]!r}") from None
        name = t.get("name", f"t{i + 1}")
        if not isinstance(name, str):
            raise GameFormatError(f"target {i}: name must be a string")
        try:
            targets.append(TargetPayoffs(*vals, name=name))
        except InvalidGame as exc:
            raise GameFormatError(str(exc)) from exc
    resources = []
    for r, res in enumerate(raw_resources):
        if not isinstance(res, dict) or not isinstance(res.get("schedules"), list):
            raise GameFormatError(f"resource {r} must be an object with a schedules list")
        scheds = []
        for s in res["schedules"]:
            if not isinstance(s, list) or any(isinstance(x, bool) or not isinstance(x, int)
                                              for x in s):
                raise GameFormatError(f"resource {r}: schedules must be lists of target indices")
            scheds.append(tuple(s))
        resources.append(tuple(scheds))
    L = obj.get("attacker_resources", 1)
    if isinstance(L, bool) or not isinstance(L, int):
        raise GameFormatError("attacker_resources must be an integer")
    try:
        return SecurityGame(tuple(targets), tuple(resources), L)
    except InvalidGame as exc:
        raise GameFormatError(str(exc)) from exc


def game_to_dict(game: SecurityGame) -> dict:
    return {
        "targets": [{"name": t.name or f"t{i + 1}", "dc": fmt_rational(t.dc),
                     "du": fmt_rational(t.du), "ac": fmt_rational(t.ac),
                     "au": fmt_rational(t.au)}
                    for i, t in enumerate(game.targets)],
        "resources": [{"schedules": [sorted(s) for s in sched]} for sched in game.resources],
        "attacker_resources": game.L,
    }


def loads(text: str) -> SecurityGame:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON: {exc}") from exc
    return game_from_dict(obj)


def dumps(game: SecurityGame) -> str:
    return json.dumps(game_to_dict(game), sort_keys=True)


def load(path) -> SecurityGame:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise GameFormatError(f"cannot read {path}: {exc}") from exc


def dump(game: SecurityGame, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(game_to_dict(game), indent=1, sort_keys=True))
        fh.write("\n")
