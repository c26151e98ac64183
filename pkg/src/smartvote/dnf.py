"""Complete DNF delegation formulas.

A Boolean delegation is stored as the set of *all* its prime implicants
(the Blake canonical form). Two properties make this representation worth
the pre-processing cost:

* the value forced by a partial assignment (the necessary winner) is read
  off cube by cube, in time linear in the formula;
* equivalence of two formulas is equality of their cube sets.

Formulas use the textual syntax ``b&c | b&~d``: cubes joined by ``|``,
literals joined by ``&``, ``~`` for negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Optional

from .errors import ContradictionError, FormulaError, TautologyError


class Literal(NamedTuple):
    agent: str
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.agent, not self.positive)

    def sort_key(self):
        return (self.agent, not self.positive)

    def value_under(self, assignment: Mapping[str, Optional[int]]) -> Optional[bool]:
        """True/False if the literal's agent is assigned, else None."""
        v = assignment.get(self.agent)
        if v is None:
            return None
        return bool(v) == self.positive

    def __str__(self):
        return self.agent if self.positive else "~" + self.agent


Cube = frozenset  # frozenset[Literal]


def cube_key(cube) -> tuple:
    return tuple(lit.sort_key() for lit in sorted(cube, key=Literal.sort_key))


def format_cube(cube) -> str:
    return "&".join(str(lit) for lit in sorted(cube, key=Literal.sort_key))


def is_contradictory(cube) -> bool:
    return any(lit.negate() in cube for lit in cube)


@dataclass(frozen=True)
class CompleteDnf:
    """A contingent Boolean function given by its full set of prime implicants.

    Build instances with :func:`complete` or :func:`parse`; the constructor
    trusts its input.
    """

    cubes: frozenset

    @property
    def variables(self) -> frozenset:
        return frozenset(lit.agent for cube in self.cubes for lit in cube)

    @property
    def size(self) -> int:
        """Number of literal occurrences."""
        return sum(len(cube) for cube in self.cubes)

    def sorted_cubes(self) -> list:
        return sorted(self.cubes, key=cube_key)

    def identity_agent(self) -> Optional[str]:
        """The delegate if this formula is a single positive atom."""
        if len(self.cubes) == 1:
            (cube,) = self.cubes
            if len(cube) == 1:
                (lit,) = cube
                if lit.positive:
                    return lit.agent
        return None

    def necessary_winner(self, assignment):
        return necessary_winner(self, assignment)

    def __str__(self):
        return " | ".join(format_cube(c) for c in self.sorted_cubes())

    def __repr__(self):
        return f"CompleteDnf({str(self)!r})"


def necessary_winner(f: CompleteDnf, assignment: Mapping[str, Optional[int]]) -> Optional[int]:
    """Value of ``f`` forced by a partial assignment, or None if undetermined.

    Missing keys and ``None`` values are unassigned. Correct only because
    ``f`` lists every prime implicant: 1 iff some cube is fully satisfied,
    0 iff every cube has a falsified literal.
    """
    all_false = True
    for cube in f.cubes:
        cube_false = False
        cube_true = True
        for lit in cube:
            v = lit.value_under(assignment)
            if v is None:
                cube_true = False
            elif not v:
                cube_false = True
                cube_true = False
                break
        if cube_true:
            return 1
        if not cube_false:
            all_false = False
    return 0 if all_false else None


def evaluate(f: CompleteDnf, assignment: Mapping[str, int]) -> int:
    """Truth value of ``f`` under an assignment covering all its variables."""
    missing = f.variables - set(assignment)
    if missing:
        raise KeyError(f"unassigned variables: {sorted(missing)}")
    return int(any(all(lit.value_under(assignment) for lit in cube) for cube in f.cubes))


def _absorb(cubes: set) -> set:
    # drop every cube that strictly contains another
    kept = set()
    for c in sorted(cubes, key=len):
        if not any(k <= c for k in kept):
            kept.add(c)
    return kept


def _consensus(c1, c2):
    clash = [lit for lit in c1 if lit.negate() in c2]
    if len(clash) != 1:
        return None
    lit = clash[0]
    return frozenset((c1 - {lit}) | (c2 - {lit.negate()}))


def prime_implicants(cubes: Iterable) -> frozenset:
    """All prime implicants of a DNF, by iterated consensus and absorption.

    Returns ``frozenset({frozenset()})`` for a tautology and the empty set
    for a contradiction.
    """
    current = set()
    for cube in cubes:
        cube = frozenset(cube)
        if is_contradictory(cube):
            raise FormulaError(f"cube {format_cube(cube)} contains a variable and its negation")
        current.add(cube)
    current = _absorb(current)
    while True:
        new = set()
        items = sorted(current, key=cube_key)
        for c1, c2 in combinations(items, 2):
            res = _consensus(c1, c2)
            if res is None or any(c <= res for c in current) or any(c <= res for c in new):
                continue
            new = {c for c in new if not res <= c}
            new.add(res)
        if not new:
            return frozenset(current)
        current = _absorb(current | new)


def complete(cubes: Iterable) -> CompleteDnf:
    """The complete DNF of the function given by ``cubes``.

    Raises TautologyError or ContradictionError for non-contingent input.
    """
    primes = prime_implicants(cubes)
    if not primes:
        raise ContradictionError("formula is unsatisfiable")
    if frozenset() in primes:
        raise TautologyError("formula is a tautology")
    return CompleteDnf(primes)


def equivalent(f: CompleteDnf, g: CompleteDnf) -> bool:
    return f.cubes == g.cubes


def atom(agent: str) -> CompleteDnf:
    return CompleteDnf(frozenset({frozenset({Literal(agent, True)})}))


_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


def parse_cubes(text: str) -> list:
    """Parse ``b&c | ~d`` into a list of cubes, without completing it."""
    if not text or not text.strip():
        raise FormulaError("empty formula")
    cubes = []
    for cube_text in text.split("|"):
        lits = []
        for lit_text in cube_text.split("&"):
            lit_text = lit_text.strip()
            positive = True
            while lit_text.startswith("~"):
                positive = not positive
                lit_text = lit_text[1:].strip()
            if not _IDENT.match(lit_text):
                raise FormulaError(f"not a DNF literal: {lit_text!r} in {text!r}")
            lits.append(Literal(lit_text, positive))
        cubes.append(frozenset(lits))
    return cubes


def parse(text: str) -> CompleteDnf:
    return complete(parse_cubes(text))
