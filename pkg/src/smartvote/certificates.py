"""Certificates: which preference level each agent's vote comes from.

A certificate is consistent when some ordering of the agents lets every
agent's certified level be evaluated from the votes of the agents before
it. Consistency is decided by a deterministic fixpoint rather than a search
over orderings: start from the agents whose certified level is a direct
vote and keep adding any agent whose certified delegation has a necessary
winner on the votes gathered so far.
"""

from __future__ import annotations

import itertools
import os
import random
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .ballots import DirectVote, Profile
from .errors import AgentMismatchError, BoundsError, CapExceededError, InconsistentCertificateError

DEFAULT_CAP = 10**6


def default_cap() -> int:
    return int(os.environ.get("SMARTVOTE_ENUM_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class Certificate(Mapping):
    agents: tuple
    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "levels", tuple(int(x) for x in self.levels))
        if len(self.agents) != len(self.levels):
            raise AgentMismatchError("one level per agent is required")

    @classmethod
    def of(cls, p: Profile, levels: Union[Sequence[int], Mapping]) -> "Certificate":
        """Certificate for ``p`` from a sequence in agent order or a mapping."""
        if isinstance(levels, Mapping):
            if set(levels) != set(p.agents):
                raise AgentMismatchError("certificate agents differ from profile agents")
            levels = [levels[a] for a in p.agents]
        return cls(p.agents, tuple(levels))

    def __getitem__(self, agent):
        try:
            return self.levels[self.agents.index(agent)]
        except ValueError:
            raise KeyError(agent) from None

    def __iter__(self):
        return iter(self.agents)

    def __len__(self):
        return len(self.agents)

    def __eq__(self, other):
        if isinstance(other, Certificate):
            return self.agents == other.agents and self.levels == other.levels
        return NotImplemented

    def __hash__(self):
        return hash((self.agents, self.levels))

    @property
    def rank(self) -> int:
        return sum(self.levels)

    @property
    def max_level(self) -> int:
        return max(self.levels)

    def to_dict(self) -> dict:
        return dict(zip(self.agents, self.levels))

    def __str__(self):
        return "(" + ",".join(map(str, self.levels)) + ")"

    def __repr__(self):
        return f"Certificate{self}"


def rank(c: Certificate) -> int:
    return c.rank


def max_level(c: Certificate) -> int:
    return c.max_level


@dataclass(frozen=True)
class Outcome:
    """Per-agent direct votes; ``None`` stands for a not-yet-determined vote."""

    agents: tuple
    votes: tuple

    @classmethod
    def from_mapping(cls, agents: Sequence[str], votes: Mapping) -> "Outcome":
        return cls(tuple(agents), tuple(votes.get(a) for a in agents))

    def __getitem__(self, agent):
        return self.votes[self.agents.index(agent)]

    @property
    def is_complete(self) -> bool:
        return all(v is not None for v in self.votes)

    def to_dict(self) -> dict:
        return dict(zip(self.agents, self.votes))

    def __str__(self):
        return "(" + ",".join("Δ" if v is None else v for v in self.votes) + ")"


@dataclass(frozen=True)
class ConsistencyWitness:
    ordering: tuple
    outcome: Outcome


@dataclass(frozen=True)
class ConsistencyResult:
    witness: Optional[ConsistencyWitness]
    stuck: frozenset
    evaluations: int

    @property
    def consistent(self) -> bool:
        return self.witness is not None

    def __bool__(self):
        return self.consistent


def check_bounds(p: Profile, c: Certificate) -> None:
    if c.agents != p.agents:
        raise AgentMismatchError("certificate agents differ from profile agents")
    for a, h in zip(c.agents, c.levels):
        if not 1 <= h <= len(p[a]):
            raise BoundsError(f"level {h} for {a} outside ballot of length {len(p[a])}")


def check_consistent(p: Profile, c: Certificate) -> ConsistencyResult:
    check_bounds(p, c)
    votes = {}
    order = []
    pending = []
    for a, h in zip(p.agents, c.levels):
        lev = p.level(a, h)
        if isinstance(lev, DirectVote):
            votes[a] = lev.value
            order.append(a)
        else:
            pending.append((a, lev.fn))
    evaluations = 0
    progress = True
    while pending and progress:
        progress = False
        rest = []
        for a, fn in pending:
            evaluations += 1
            v = fn.necessary_winner(votes)
            if v is None:
                rest.append((a, fn))
            else:
                votes[a] = v
                order.append(a)
                progress = True
        pending = rest
    if pending:
        return ConsistencyResult(None, frozenset(a for a, _ in pending), evaluations)
    witness = ConsistencyWitness(tuple(order), Outcome.from_mapping(p.agents, votes))
    return ConsistencyResult(witness, frozenset(), evaluations)


def is_consistent(p: Profile, c: Certificate) -> bool:
    return check_consistent(p, c).consistent


def outcome_of(p: Profile, c: Certificate) -> Outcome:
    result = check_consistent(p, c)
    if not result:
        raise InconsistentCertificateError(result.stuck)
    return result.witness.outcome


def replay(p: Profile, c: Certificate, ordering: Sequence[str]) -> Optional[Outcome]:
    """Evaluate agents strictly in ``ordering``; None if some agent cannot be evaluated."""
    check_bounds(p, c)
    if sorted(ordering) != sorted(p.agents):
        raise AgentMismatchError("ordering must be a permutation of the agents")
    votes = {}
    for a in ordering:
        lev = p.level(a, c[a])
        v = lev.value if isinstance(lev, DirectVote) else lev.fn.necessary_winner(votes)
        if v is None:
            return None
        votes[a] = v
    return Outcome.from_mapping(p.agents, votes)


def random_witness(p: Profile, c: Certificate, rng: random.Random) -> Optional[tuple]:
    """A uniformly-stepped valid ordering for ``c``, or None if ``c`` is inconsistent."""
    check_bounds(p, c)
    votes = {}
    order = []
    remaining = list(p.agents)
    while remaining:
        ready = []
        for a in remaining:
            lev = p.level(a, c[a])
            v = lev.value if isinstance(lev, DirectVote) else lev.fn.necessary_winner(votes)
            if v is not None:
                ready.append((a, v))
        if not ready:
            return None
        a, v = ready[rng.randrange(len(ready))]
        votes[a] = v
        order.append(a)
        remaining.remove(a)
    return tuple(order)


def certificate_space_size(p: Profile) -> int:
    size = 1
    for a in p.agents:
        size *= len(p[a])
    return size


def iter_certificates(p: Profile) -> Iterator[Certificate]:
    """Every in-bounds certificate, mixed-radix order with the last agent fastest."""
    ranges = [range(1, len(p[a]) + 1) for a in p.agents]
    for levels in itertools.product(*ranges):
        yield Certificate(p.agents, levels)


def enumerate_consistent(p: Profile, cap: Optional[int] = None) -> list:
    """All consistent certificates of ``p`` paired with their outcomes."""
    cap = default_cap() if cap is None else cap
    size = certificate_space_size(p)
    if size > cap:
        raise CapExceededError(size, cap, "certificate space")
    out = []
    for c in iter_certificates(p):
        result = check_consistent(p, c)
        if result:
            out.append((c, result.witness.outcome))
    return out
