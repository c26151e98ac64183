"""Worked example profiles shipped with the package.

Each profile is defined here as rows and also stored as JSON next to this
module (regenerate with ``scripts/make_fixtures.py``). ``load`` reads the
JSON copy; ``build`` constructs the profile from the rows.
"""

from __future__ import annotations

import string
from importlib import resources

from ..ballots import Profile, profile_from_rows
from ..fileformat import loads

BOOL = ("0", "1")
TERNARY = ("0", "1", "*")


def _example3_rows(n: int = 26) -> dict:
    names = string.ascii_lowercase[:n]
    rows = {"a": ["|".join(names[1:]), "|".join(names[2:]), "|".join(names[3:]), "1"]}
    for x in names[1:]:
        rows[x] = ["a", "0"]
    return rows


ROWS = {
    "table1": (BOOL, {
        "a": ["b&c", "d", "1"],
        "b": ["1"],
        "c": ["d", "0"],
        "d": ["e", "1"],
        "e": ["a", "b", "0"],
    }),
    "table2": (BOOL, _example3_rows()),
    "table3": (TERNARY, {
        "a": ["1"],
        "b": ["c", "a", "*"],
        "c": ["d", "e", "*"],
        "d": ["b", "e", "*"],
        "e": ["0"],
    }),
    "table4": (BOOL, {
        "a": ["b", "c", "d", "1"],
        "b": ["a", "c", "0"],
        "c": ["a", "b", "1"],
        "d": ["a", "1"],
    }),
    "table5": (TERNARY, {
        "a": ["1"],
        "b": ["c", "a", "*"],
        "c": ["d", "f", "*"],
        "d": ["b", "f", "*"],
        "e": ["1"],
        "f": ["0"],
    }),
    "table6": (BOOL, {
        "a": ["b|e", "c|e", "0"],
        "b": ["c|e", "a|e", "0"],
        "c": ["a|e", "b|e", "0"],
        "d": ["1"],
        "e": ["f", "d", "0"],
        "f": ["e", "0"],
    }),
    "fig1": (BOOL, {
        "a": ["b&c | b&d", "e", "1"],
        "b": ["1"],
        "c": ["0"],
        "d": ["e", "0"],
        "e": ["f", "1"],
        "f": ["a", "b", "1"],
    }),
    "remark4": (("1", "0", "*"), {
        "a": ["b", "c", "*"],
        "b": ["*"],
        "c": ["1"],
    }),
    # ballot (iii) for agent a; everyone else abstains
    "example1": (TERNARY, {
        "a": ["d", "e", "*"],
        "b": ["*"],
        "c": ["*"],
        "d": ["*"],
        "e": ["*"],
        "f": ["*"],
    }),
    # ballot (iv) for agent a
    "example1_bool": (BOOL, {
        "a": ["b | f", "c&b | ~e&b", "1"],
        "b": ["1"],
        "c": ["0"],
        "d": ["1"],
        "e": ["0"],
        "f": ["1"],
    }),
}

NAMES = tuple(ROWS)


def build(name: str) -> Profile:
    if name not in ROWS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    domain, rows = ROWS[name]
    return profile_from_rows(rows, domain)


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.json")


def load(name: str) -> Profile:
    if name not in ROWS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return loads(path(name).read_text())
