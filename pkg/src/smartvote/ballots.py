"""Smart ballots, profiles, validity and language classification.

A smart ballot is a ranking of delegations ending in a direct backup vote.
Levels are addressed 1-based throughout, matching certificates.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional, Sequence, Union

from . import dnf
from .dnf import CompleteDnf
from .errors import ProfileError

ABSTAIN = "*"
BINARY = frozenset({"0", "1"})


@dataclass(frozen=True)
class Domain:
    alternatives: tuple

    def __post_init__(self):
        if not self.alternatives:
            raise ProfileError("domain must be non-empty")
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ProfileError(f"duplicate alternatives in domain {self.alternatives}")

    @property
    def allows_abstention(self) -> bool:
        return ABSTAIN in self.alternatives

    @property
    def is_binary(self) -> bool:
        return frozenset(self.alternatives) == BINARY

    def __contains__(self, x) -> bool:
        return x in self.alternatives

    def __iter__(self):
        return iter(self.alternatives)


class DelegationFunction(ABC):
    """Contract for the function ``F`` of a delegation ``(S, F)``.

    Implementations beyond :class:`Identity` and :class:`Dnf` may be added
    by subclassing; they must report their variable set and evaluate the
    necessary winner on partial input. They are not part of the Bool or
    Liquid languages and cannot be written to profile files.
    """

    binary_only = False

    @property
    @abstractmethod
    def delegates(self) -> frozenset: ...

    @abstractmethod
    def necessary_winner(self, votes: Mapping[str, Optional[str]]) -> Optional[str]:
        """The alternative forced by the known votes, or None."""

    @property
    def size(self) -> int:
        """Cost of one necessary-winner evaluation, in literal scans."""
        return len(self.delegates)

    def possible_values(self, possible: Mapping[str, frozenset], domain: "Domain") -> frozenset:
        """Values the function could take if each delegate may end up with any of ``possible[d]``.

        Used for pruning, so it may over-approximate but must never miss a
        reachable value. The default claims every alternative.
        """
        return frozenset(domain.alternatives)

    def as_dnf(self) -> Optional[CompleteDnf]:
        return None

    def equivalent_to(self, other: "DelegationFunction") -> bool:
        mine, theirs = self.as_dnf(), other.as_dnf()
        if mine is not None and theirs is not None:
            return dnf.equivalent(mine, theirs)
        return self == other


@dataclass(frozen=True)
class Identity(DelegationFunction):
    of: str

    @property
    def delegates(self):
        return frozenset({self.of})

    def necessary_winner(self, votes):
        return votes.get(self.of)

    @property
    def size(self):
        return 1

    def possible_values(self, possible, domain):
        return frozenset(possible.get(self.of, ()))

    def as_dnf(self):
        return dnf.atom(self.of)

    def __str__(self):
        return self.of


@dataclass(frozen=True)
class Dnf(DelegationFunction):
    formula: CompleteDnf
    binary_only = True

    @property
    def delegates(self):
        return self.formula.variables

    def necessary_winner(self, votes):
        bits = {}
        for agent in self.formula.variables:
            v = votes.get(agent)
            if v == "1":
                bits[agent] = 1
            elif v == "0":
                bits[agent] = 0
        result = dnf.necessary_winner(self.formula, bits)
        return None if result is None else str(result)

    @property
    def size(self):
        return self.formula.size

    def possible_values(self, possible, domain):
        def can(lit, truth):
            want = "1" if lit.positive == truth else "0"
            return want in possible.get(lit.agent, ())

        out = set()
        cubes = self.formula.cubes
        if any(all(can(lit, True) for lit in cube) for cube in cubes):
            out.add("1")
        if all(any(can(lit, False) for lit in cube) for cube in cubes):
            out.add("0")
        return frozenset(out)

    def as_dnf(self):
        return self.formula

    def __str__(self):
        return str(self.formula)


def make_function(fn: Union[DelegationFunction, CompleteDnf, str]) -> DelegationFunction:
    """Normalise a formula (or formula text) into a delegation function.

    A formula consisting of one positive atom becomes :class:`Identity`.
    """
    if isinstance(fn, DelegationFunction):
        if isinstance(fn, Dnf) and fn.formula.identity_agent() is not None:
            return Identity(fn.formula.identity_agent())
        return fn
    if isinstance(fn, str):
        fn = dnf.parse(fn)
    agent = fn.identity_agent()
    return Identity(agent) if agent is not None else Dnf(fn)


@dataclass(frozen=True)
class DirectVote:
    value: str

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Delegation:
    fn: DelegationFunction

    @property
    def delegates(self) -> frozenset:
        return self.fn.delegates

    def __str__(self):
        return f"({{{','.join(sorted(self.delegates))}}}, {self.fn})"


Level = Union[DirectVote, Delegation]


@dataclass(frozen=True)
class SmartBallot:
    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if not self.levels:
            raise ProfileError("a ballot needs at least a backup vote")
        if not isinstance(self.levels[-1], DirectVote):
            raise ProfileError("the last level of a ballot must be a direct vote")
        for lev in self.levels[:-1]:
            if not isinstance(lev, Delegation):
                raise ProfileError("direct votes may only appear as the final backup level")

    def __len__(self):
        return len(self.levels)

    def level(self, h: int) -> Level:
        """The h-th preference level, 1-based."""
        if not 1 <= h <= len(self.levels):
            raise IndexError(f"level {h} outside ballot of length {len(self.levels)}")
        return self.levels[h - 1]

    @property
    def backup(self) -> str:
        return self.levels[-1].value

    @property
    def delegations(self) -> tuple:
        return self.levels[:-1]

    @property
    def delegation_count(self) -> int:
        return len(self.levels) - 1

    def __str__(self):
        return " > ".join(str(lev) for lev in self.levels)


def level_from_text(text: str, domain: Domain) -> Level:
    if text in domain:
        return DirectVote(text)
    return Delegation(make_function(text))


def ballot(*levels, domain: Domain = Domain(("0", "1", ABSTAIN))) -> SmartBallot:
    """Shorthand: ``ballot("b&c", "d", "1")``. Strings in the domain are votes."""
    out = []
    for lev in levels:
        if isinstance(lev, (DirectVote, Delegation)):
            out.append(lev)
        elif isinstance(lev, DelegationFunction):
            out.append(Delegation(make_function(lev)))
        else:
            out.append(level_from_text(str(lev), domain))
    return SmartBallot(tuple(out))


@dataclass(frozen=True)
class Profile:
    agents: tuple
    domain: Domain
    ballots: Mapping[str, SmartBallot]

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "ballots", MappingProxyType(dict(self.ballots)))
        agent_set = set(self.agents)
        if len(agent_set) != len(self.agents):
            raise ProfileError("duplicate agent identifiers")
        if set(self.ballots) != agent_set:
            missing = agent_set - set(self.ballots)
            extra = set(self.ballots) - agent_set
            raise ProfileError(f"ballots do not match agents (missing {sorted(missing)}, extra {sorted(extra)})")
        for a in self.agents:
            for h, lev in enumerate(self.ballots[a].levels, start=1):
                if isinstance(lev, DirectVote):
                    if lev.value not in self.domain:
                        raise ProfileError(f"{a} level {h}: vote {lev.value!r} not in domain")
                    continue
                unknown = lev.delegates - agent_set
                if unknown:
                    raise ProfileError(f"{a} level {h}: unknown delegate(s) {sorted(unknown)}")
                if lev.fn.binary_only and not self.domain.is_binary:
                    raise ProfileError(f"{a} level {h}: Boolean delegation on non-binary domain")

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return (self.agents, self.domain, dict(self.ballots)) == (other.agents, other.domain, dict(other.ballots))

    __hash__ = None

    @property
    def n(self) -> int:
        return len(self.agents)

    def __getitem__(self, agent) -> SmartBallot:
        return self.ballots[agent]

    def level(self, agent: str, h: int) -> Level:
        return self.ballots[agent].level(h)

    @property
    def max_levels(self) -> int:
        """Longest ballot length."""
        return max(len(b) for b in self.ballots.values())

    @property
    def max_formula_size(self) -> int:
        """Largest delegation size in literals (at least 1)."""
        sizes = [lev.fn.size for b in self.ballots.values() for lev in b.delegations]
        return max(sizes + [1])

    def replace(self, agent: str, new_ballot: SmartBallot) -> "Profile":
        ballots = dict(self.ballots)
        ballots[agent] = new_ballot
        return Profile(self.agents, self.domain, ballots)

    def __str__(self):
        return "\n".join(f"{a}: {self.ballots[a]}" for a in self.agents)


def profile_from_rows(rows: Mapping[str, Sequence], domain: Sequence[str] = ("0", "1")) -> Profile:
    """Build a profile from ``{"a": ["b&c", "d", "1"], ...}``; agents in key order."""
    dom = Domain(tuple(domain))
    ballots = {a: ballot(*levels, domain=dom) for a, levels in rows.items()}
    return Profile(tuple(rows), dom, ballots)


@dataclass(frozen=True)
class Violation:
    condition: str  # "i": equivalent repeated delegation; "ii": self-delegation
    levels: tuple
    message: str


def validate_ballot(b: SmartBallot, owner: str) -> list:
    """Every validity violation of ``b`` as submitted by ``owner`` (empty when valid)."""
    out = []
    dels = list(enumerate(b.levels, start=1))[:-1]
    for h, lev in dels:
        if owner in lev.delegates:
            out.append(Violation("ii", (h,), f"level {h} delegates to the ballot owner {owner}"))
    for (s, ls), (t, lt) in ((x, y) for i, x in enumerate(dels) for y in dels[i + 1:]):
        if ls.delegates & lt.delegates and ls.fn.equivalent_to(lt.fn):
            out.append(Violation("i", (s, t), f"levels {s} and {t} repeat an equivalent delegation"))
    return out


def validate_profile(p: Profile) -> dict:
    """Map each agent with an invalid ballot to its violations; empty when valid."""
    report = {}
    for a in p.agents:
        v = validate_ballot(p[a], a)
        if v:
            report[a] = v
    return report


def is_valid(p: Profile) -> bool:
    return not validate_profile(p)


@dataclass(frozen=True)
class LanguageReport:
    in_bool: bool
    in_liquid: bool
    in_liquid_star: bool
    max_delegation_count: int

    def names(self) -> list:
        k = self.max_delegation_count
        out = []
        if self.in_bool:
            out.append(f"Bool[{k}]")
        if self.in_liquid:
            out.append(f"Liquid[{k}]")
        if self.in_liquid_star:
            out.append(f"Liquid*[{k}]")
        return out


def classify_ballot(b: SmartBallot, domain: Domain) -> LanguageReport:
    fns = [lev.fn for lev in b.delegations]
    in_liquid = all(isinstance(f, Identity) for f in fns)
    return LanguageReport(
        in_bool=domain.is_binary and all(isinstance(f, (Identity, Dnf)) for f in fns),
        in_liquid=in_liquid,
        # a bare direct vote is allowed; only delegating ballots must fall back to abstention
        in_liquid_star=in_liquid and (not fns or b.backup == ABSTAIN),
        max_delegation_count=b.delegation_count,
    )


def classify_language(p: Profile) -> LanguageReport:
    reports = [classify_ballot(p[a], p.domain) for a in p.agents]
    return LanguageReport(
        in_bool=all(r.in_bool for r in reports),
        in_liquid=all(r.in_liquid for r in reports),
        in_liquid_star=all(r.in_liquid_star for r in reports),
        max_delegation_count=max(r.max_delegation_count for r in reports),
    )
