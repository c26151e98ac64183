"""JSON profile files.

Schema::

    {
      "domain": ["0", "1", "*"],
      "agents": ["a", "b", ...],
      "ballots": {
        "a": [
          {"delegates": ["b", "c"], "fn": {"kind": "dnf", "expr": "b&c"}},
          {"delegates": ["d"], "fn": {"kind": "id", "of": "d"}},
          {"vote": "1"}
        ],
        ...
      }
    }

Every ballot is a list of levels, most preferred first, and must end with a
``vote`` level. ``delegates`` must equal the variables of ``fn``. A ``dnf``
expression is completed to its prime implicants on load; one made of a
single positive atom is loaded as ``id``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from . import dnf
from .ballots import Delegation, DirectVote, Domain, Dnf, Identity, Profile, SmartBallot, make_function
from .errors import FormulaError, ProfileError


class ProfileFormatError(ProfileError):
    def __init__(self, message, where=""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def _level_from_json(obj, where):
    if not isinstance(obj, dict):
        raise ProfileFormatError("level must be an object", where)
    if "vote" in obj:
        if set(obj) != {"vote"}:
            raise ProfileFormatError("a vote level takes only the 'vote' key", where)
        return DirectVote(str(obj["vote"]))
    if set(obj) != {"delegates", "fn"}:
        raise ProfileFormatError("a delegation level needs exactly 'delegates' and 'fn'", where)
    fn = obj["fn"]
    if not isinstance(fn, dict) or "kind" not in fn:
        raise ProfileFormatError("'fn' must be an object with a 'kind'", where)
    if fn["kind"] == "id":
        func = Identity(str(fn["of"]))
    elif fn["kind"] == "dnf":
        try:
            func = make_function(dnf.parse(str(fn["expr"])))
        except FormulaError as exc:
            raise ProfileFormatError(str(exc), where + ".fn.expr") from None
    else:
        raise ProfileFormatError(f"unknown function kind {fn['kind']!r}", where + ".fn")
    declared = frozenset(map(str, obj["delegates"]))
    if declared != func.delegates:
        raise ProfileFormatError(
            f"delegates {sorted(declared)} differ from the function's variables {sorted(func.delegates)}", where
        )
    return Delegation(func)


def profile_from_json(data) -> Profile:
    if not isinstance(data, dict):
        raise ProfileFormatError("top level must be an object")
    for key in ("domain", "agents", "ballots"):
        if key not in data:
            raise ProfileFormatError(f"missing key {key!r}")
    domain = Domain(tuple(str(x) for x in data["domain"]))
    agents = tuple(str(a) for a in data["agents"])
    ballots = {}
    for a, levels in data["ballots"].items():
        where = f"ballots.{a}"
        if not isinstance(levels, list):
            raise ProfileFormatError("ballot must be a list of levels", where)
        try:
            ballots[a] = SmartBallot(tuple(_level_from_json(lev, f"{where}[{i}]") for i, lev in enumerate(levels)))
        except ProfileFormatError:
            raise
        except ProfileError as exc:
            raise ProfileFormatError(str(exc), where) from None
    return Profile(agents, domain, ballots)


def _level_to_json(level):
    if isinstance(level, DirectVote):
        return {"vote": level.value}
    fn = level.fn
    if isinstance(fn, Identity):
        body = {"kind": "id", "of": fn.of}
    elif isinstance(fn, Dnf):
        body = {"kind": "dnf", "expr": str(fn.formula)}
    else:
        raise ProfileError(f"{type(fn).__name__} delegations have no file representation")
    return {"delegates": sorted(level.delegates), "fn": body}


def profile_to_json(p: Profile) -> dict:
    return {
        "domain": list(p.domain.alternatives),
        "agents": list(p.agents),
        "ballots": {a: [_level_to_json(lev) for lev in p[a].levels] for a in p.agents},
    }


def loads(text: str) -> Profile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return profile_from_json(data)


def dumps(p: Profile) -> str:
    return json.dumps(profile_to_json(p), indent=2) + "\n"


def load(path: Union[str, Path]) -> Profile:
    return loads(Path(path).read_text())


def dump(p: Profile, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(p))
