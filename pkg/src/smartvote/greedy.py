"""Greedy unravelling with the four update procedures U, DU, RU and DRU.

The driver keeps a vote vector ``X`` (``None`` for an undetermined vote)
and a frozen copy ``Y``. Starting at level 1 it calls the update procedure
on successive levels until ``X`` changes, then restarts from level 1. Every
necessary winner is computed against ``Y``, never against the partially
updated ``X``, so a U pass does not depend on the agent scan order.

Update procedures differ in two switches:

* direct-vote priority (DU, DRU): at a level, direct votes are taken first
  and computed votes only when no direct vote is available;
* random voter selection (RU, DRU): a single agent, drawn uniformly from
  the eligible ones in agent order, is assigned per update.

Agents whose ballot is shorter than the current level are skipped.

Step accounting: one step per (agent, level) inspection plus one per
literal scanned in a necessary-winner evaluation. With ``max_p`` the
longest ballot and ``max_phi`` the largest delegation size, every run takes
at most ``STEP_CONSTANT * n**2 * max_p * max_phi`` steps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Union

from .ballots import DirectVote, Profile, validate_profile
from .certificates import Certificate, Outcome
from .errors import CapExceededError, InvalidProfileError, SmartVoteError

STEP_CONSTANT = 4
DEFAULT_BRANCH_CAP = 100_000


class UpdateKind(str, Enum):
    U = "U"
    DU = "DU"
    RU = "RU"
    DRU = "DRU"

    @property
    def direct_priority(self) -> bool:
        return self in (UpdateKind.DU, UpdateKind.DRU)

    @property
    def randomized(self) -> bool:
        return self in (UpdateKind.RU, UpdateKind.DRU)

    @classmethod
    def parse(cls, name: Union[str, "UpdateKind"]) -> "UpdateKind":
        return name if isinstance(name, cls) else cls(name.upper())


@dataclass(frozen=True)
class TraceEvent:
    lev: int
    agent: str
    vote: str
    direct: bool


@dataclass(frozen=True)
class GreedyResult:
    outcome: Outcome
    certificate: Certificate
    trace: tuple
    step_count: int
    choices: tuple = ()  # (number of options, chosen index) per random draw


class _Run:
    def __init__(self, p: Profile, kind: UpdateKind, choose: Callable[[int], int]):
        self.p = p
        self.kind = kind
        self.choose = choose
        self.steps = 0
        self.trace = []
        self.choices = []
        self.X = {a: None for a in p.agents}
        self.cert = {}

    def _inspect(self, a, lev, Y, computed=True):
        """(vote, direct) for agent ``a`` at ``lev``, or None."""
        self.steps += 1
        level = self.p.level(a, lev)
        if isinstance(level, DirectVote):
            return level.value, True
        if not computed:
            return None
        self.steps += level.fn.size
        v = level.fn.necessary_winner(Y)
        return None if v is None else (v, False)

    def _assign(self, a, lev, vote, direct):
        self.X[a] = vote
        self.cert[a] = lev
        self.trace.append(TraceEvent(lev, a, vote, direct))

    def _open(self, lev):
        return [a for a in self.p.agents if self.X[a] is None and len(self.p[a]) >= lev]

    def _pick(self, options):
        if len(options) == 1:
            return options[0]
        i = self.choose(len(options))
        self.choices.append((len(options), i))
        return options[i]

    def update(self, lev, Y):
        kind = self.kind
        if kind is UpdateKind.U:
            for a in self._open(lev):
                r = self._inspect(a, lev, Y)
                if r is not None:
                    self._assign(a, lev, *r)
        elif kind is UpdateKind.DU:
            candidates = self._open(lev)
            added = False
            for a in candidates:
                r = self._inspect(a, lev, Y, computed=False)
                if r is not None:
                    self._assign(a, lev, *r)
                    added = True
            if not added:
                for a in candidates:
                    r = self._inspect(a, lev, Y)
                    if r is not None:
                        self._assign(a, lev, *r)
        elif kind is UpdateKind.RU:
            pool = []
            for a in self._open(lev):
                r = self._inspect(a, lev, Y)
                if r is not None:
                    pool.append((a, r))
            if pool:
                a, r = self._pick(pool)
                self._assign(a, lev, *r)
        else:
            direct, computed = [], []
            for a in self._open(lev):
                r = self._inspect(a, lev, Y)
                if r is not None:
                    (direct if r[1] else computed).append((a, r))
            pool = direct or computed
            if pool:
                a, r = self._pick(pool)
                self._assign(a, lev, *r)

    def run(self) -> GreedyResult:
        max_p = self.p.max_levels
        while any(v is None for v in self.X.values()):
            lev = 1
            Y = dict(self.X)
            while self.X == Y:
                if lev > max_p:
                    raise SmartVoteError(f"no vote could be added at any level up to {max_p}")
                self.update(lev, Y)
                lev += 1
        outcome = Outcome.from_mapping(self.p.agents, self.X)
        cert = Certificate.of(self.p, self.cert)
        return GreedyResult(outcome, cert, tuple(self.trace), self.steps, tuple(self.choices))


def _rng(rng) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(0 if rng is None else rng)


def _check(p: Profile) -> None:
    violations = validate_profile(p)
    if violations:
        raise InvalidProfileError(violations)


def unravel(p: Profile, kind: Union[str, UpdateKind] = UpdateKind.U, rng=None) -> GreedyResult:
    """Run the greedy unravelling. ``rng`` is a seed or ``random.Random``; U and DU ignore it."""
    _check(p)
    kind = UpdateKind.parse(kind)
    gen = _rng(rng)
    return _Run(p, kind, gen.randrange).run()


@dataclass(frozen=True)
class Branch:
    outcome: Outcome
    certificate: Certificate
    branch_count: int
    probability: Fraction


def _round_options(p: Profile, kind: UpdateKind, X: dict) -> list:
    """Every (agent, level, vote) a randomized update could add to ``X`` next."""
    for lev in range(1, p.max_levels + 1):
        direct, computed = [], []
        for a in p.agents:
            if X[a] is not None or len(p[a]) < lev:
                continue
            level = p.level(a, lev)
            if isinstance(level, DirectVote):
                direct.append((a, lev, level.value))
            else:
                v = level.fn.necessary_winner(X)
                if v is not None:
                    computed.append((a, lev, v))
        pool = (direct or computed) if kind.direct_priority else direct + computed
        if pool:
            return pool
    raise SmartVoteError(f"no vote could be added at any level up to {p.max_levels}")


def enumerate_random_branches(p: Profile, kind: Union[str, UpdateKind], cap: Optional[int] = None) -> list:
    """Expand every random draw; one entry per distinct (outcome, certificate).

    ``branch_count`` counts the executions reaching the entry and
    ``probability`` is their exact total probability. Executions that reach
    the same partial assignment are merged, so ``cap`` bounds the number of
    distinct intermediate states rather than the number of executions.
    """
    _check(p)
    kind = UpdateKind.parse(kind)
    cap = DEFAULT_BRANCH_CAP if cap is None else cap
    if not kind.randomized:
        r = _Run(p, kind, lambda k: 0).run()
        return [Branch(r.outcome, r.certificate, 1, Fraction(1))]
    # each randomized round assigns exactly one agent, so states come in layers
    layer = {frozenset(): (Fraction(1), 1)}
    seen = 0
    for _ in range(p.n):
        nxt = {}
        for state, (prob, count) in layer.items():
            seen += 1
            if seen > cap:
                raise CapExceededError(seen, cap, "random branch states")
            X = {a: None for a in p.agents}
            for a, _lev, v in state:
                X[a] = v
            pool = _round_options(p, kind, X)
            share = prob / len(pool)
            for option in pool:
                key = state | {option}
                old_p, old_c = nxt.get(key, (0, 0))
                nxt[key] = (old_p + share, old_c + count)
        layer = nxt
    branches = []
    for state, (prob, count) in layer.items():
        votes = {a: v for a, _lev, v in state}
        levels = {a: lev for a, lev, _v in state}
        branches.append(Branch(Outcome.from_mapping(p.agents, votes), Certificate.of(p, levels), count, prob))
    branches.sort(key=lambda b: (b.certificate.levels, b.outcome.votes))
    return branches


def step_bound(p: Profile) -> int:
    return STEP_CONSTANT * p.n ** 2 * p.max_levels * p.max_formula_size


def step_bound_check(p: Profile, result: GreedyResult) -> bool:
    return result.step_count <= step_bound(p)
