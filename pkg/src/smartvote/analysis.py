"""Comparing unravelling procedures: Pareto dominance, influence, voting
rules and the two participation axioms.

Preferences of a direct voter for ``x`` in {0, 1} over rule outcomes are
taken to be exactly ``x > 1-x`` and ``x > *``; ``1-x`` and ``*`` are
incomparable. A participation counterexample therefore needs the deviation
to produce ``x`` where the sincere ballot did not.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Union

from .ballots import ABSTAIN, Delegation, DirectVote, Identity, Profile, SmartBallot
from .certificates import Certificate, Outcome, check_consistent, enumerate_consistent
from .errors import AgentMismatchError, CapExceededError, DomainError, InconsistentCertificateError, ParameterError
from .greedy import UpdateKind, enumerate_random_branches, unravel
from .optimal import dominating_certificate

RULE_DOMAIN = frozenset({"0", "1", ABSTAIN})


# -- Pareto ---------------------------------------------------------------


def pareto_dominates(c1: Certificate, c2: Certificate) -> bool:
    if c1.agents != c2.agents:
        raise AgentMismatchError("certificates are over different agents")
    return all(x <= y for x, y in zip(c1.levels, c2.levels)) and c1.levels != c2.levels


def is_pareto_optimal(p: Profile, c: Certificate) -> bool:
    """No consistent certificate of ``p`` Pareto dominates ``c``."""
    if c.agents != p.agents:
        raise AgentMismatchError("certificate agents differ from profile agents")
    return dominating_certificate(p, c) is None


def is_pareto_optimal_enumerated(p: Profile, c: Certificate, cap: Optional[int] = None) -> bool:
    """Same answer as :func:`is_pareto_optimal`, by listing every consistent certificate."""
    return not any(pareto_dominates(d, c) for d, _ in enumerate_consistent(p, cap))


# -- influence -------------------------------------------------------------


@dataclass(frozen=True)
class InfluenceReport:
    agent: str
    direct: frozenset
    transitive: frozenset


def _used_delegates(p: Profile, c: Certificate) -> dict:
    out = {}
    for b in p.agents:
        lev = p.level(b, c[b])
        out[b] = lev.delegates if isinstance(lev, Delegation) else frozenset()
    return out


def influence_sets(p: Profile, c: Certificate, a: str) -> InfluenceReport:
    """Agents whose certified level delegates to ``a``, and the closure of that relation."""
    result = check_consistent(p, c)
    if not result:
        raise InconsistentCertificateError(result.stuck)
    used = _used_delegates(p, c)
    influenced = {x: frozenset(b for b in p.agents if x in used[b]) for x in p.agents}
    direct = influenced[a]
    seen = set(direct)
    todo = list(direct)
    while todo:
        x = todo.pop()
        for b in influenced[x]:
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return InfluenceReport(a, direct, frozenset(seen))


# -- rules -----------------------------------------------------------------


class VotingRule(str, Enum):
    MAJ = "maj"
    RMAJ = "rmaj"

    @classmethod
    def parse(cls, name) -> "VotingRule":
        return name if isinstance(name, cls) else cls(str(name).lower())

    def __call__(self, x) -> str:
        return apply_rule(self, x)


def _votes(x) -> tuple:
    votes = x.votes if isinstance(x, Outcome) else tuple(x)
    bad = [v for v in votes if v not in RULE_DOMAIN]
    if bad:
        raise DomainError(f"rule inputs must be 0, 1 or *, got {bad[0]!r}")
    return votes


def apply_rule(rule: Union[VotingRule, str], x) -> str:
    """Maj: the alternative with more than n/2 votes, else ``*``.
    RMaj: the more frequent of 0 and 1, ``*`` on a tie."""
    rule = VotingRule.parse(rule)
    votes = _votes(x)
    counts = Counter(votes)
    if rule is VotingRule.MAJ:
        for v in ("0", "1", ABSTAIN):
            if 2 * counts[v] > len(votes):
                return v
        return ABSTAIN
    if counts["1"] > counts["0"]:
        return "1"
    if counts["0"] > counts["1"]:
        return "0"
    return ABSTAIN


def _rule_fn(rule) -> Callable:
    if callable(rule) and not isinstance(rule, (str, VotingRule)):
        return rule
    r = VotingRule.parse(rule)
    return lambda x: apply_rule(r, x)


@dataclass(frozen=True)
class MonotonicityReport:
    holds: bool
    trials: int
    counterexample: Optional[tuple] = None  # (X, X_switched)


def _switches(X, x):
    other = "0" if x == "1" else "1"
    for i, v in enumerate(X):
        if v == other:
            yield i, x
            yield i, ABSTAIN
        elif v == ABSTAIN:
            yield i, x


def check_monotonicity(rule, trials: int = 10_000, rng=None, max_n: int = 9) -> MonotonicityReport:
    """Random search for X with r(X)=x in {0,1} and a single switch towards x that changes r."""
    r = _rule_fn(rule)
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    for t in range(trials):
        n = rng.randint(1, max_n)
        X = tuple(rng.choice(("0", "1", ABSTAIN)) for _ in range(n))
        x = r(X)
        if x == ABSTAIN:
            continue
        options = list(_switches(X, x))
        if not options:
            continue
        i, v = rng.choice(options)
        Y = X[:i] + (v,) + X[i + 1:]
        if r(Y) != x:
            return MonotonicityReport(False, t + 1, (X, Y))
    return MonotonicityReport(True, trials)


# -- participation ---------------------------------------------------------


def _outcomes(p: Profile, kind: UpdateKind) -> list:
    """Possible (outcome, certificate) pairs of a procedure."""
    kind = UpdateKind.parse(kind)
    if kind.randomized:
        return [(b.outcome, b.certificate) for b in enumerate_random_branches(p, kind)]
    r = unravel(p, kind)
    return [(r.outcome, r.certificate)]


def _strictly_prefers(x: str, new: str, old: str) -> bool:
    return new == x and old != x


def _sincere_vote(p: Profile, a: str) -> str:
    b = p[a]
    if len(b) != 1 or b.backup == ABSTAIN:
        raise ParameterError(f"agent {a} must cast a direct non-abstaining vote")
    return b.backup


@dataclass(frozen=True)
class ParticipationReport:
    holds: bool
    counterexamples: tuple = ()
    checked: int = 0


@dataclass(frozen=True)
class CastCounterexample:
    ballot: SmartBallot
    before: Outcome
    after: Outcome
    rule_before: str
    rule_after: str


def default_ballot_space(p: Profile, a: str, max_delegations: int = 2) -> Iterable[SmartBallot]:
    """Direct votes other than ``a``'s, then ranked identity delegations to
    1..max_delegations distinct other agents. The backup is ``*`` when the
    domain has it, otherwise every alternative."""
    current = p[a]
    for v in p.domain:
        b = SmartBallot((DirectVote(v),))
        if b != current:
            yield b
    backups = [ABSTAIN] if p.domain.allows_abstention else list(p.domain)
    others = [x for x in p.agents if x != a]
    for k in range(1, max_delegations + 1):
        for chain in itertools.permutations(others, k):
            for v in backups:
                yield SmartBallot(tuple(Delegation(Identity(d)) for d in chain) + (DirectVote(v),))


def check_cast_participation(p: Profile, a: str, rule, kind, ballot_space: Optional[Iterable] = None,
                             cap: int = 100_000) -> ParticipationReport:
    """Search the ballot space for a deviation ``a`` strictly prefers to their direct vote."""
    x = _sincere_vote(p, a)
    r = _rule_fn(rule)
    before = [(o, r(o)) for o, _ in _outcomes(p, kind)]
    space = default_ballot_space(p, a) if ballot_space is None else ballot_space
    found = []
    checked = 0
    for b in space:
        checked += 1
        if checked > cap:
            raise CapExceededError(checked, cap, "ballot space")
        for o2, _ in _outcomes(p.replace(a, b), kind):
            v2 = r(o2)
            for o1, v1 in before:
                if _strictly_prefers(x, v2, v1):
                    found.append(CastCounterexample(b, o1, o2, v1, v2))
    return ParticipationReport(not found, tuple(found), checked)


@dataclass(frozen=True)
class GuruCounterexample:
    abstainer: str
    before: Outcome
    after: Outcome
    rule_before: str
    rule_after: str
    before_certificate: Optional[Certificate] = None


def possible_influence(p: Profile, a: str, kind) -> frozenset:
    """Union of the transitive influence of ``a`` over every possible run of ``kind``."""
    out = set()
    for _, c in _outcomes(p, kind):
        out |= influence_sets(p, c, a).transitive
    return frozenset(out)


def check_guru_participation(p: Profile, a: str, rule, kind) -> ParticipationReport:
    """For each agent ``a`` may influence, does replacing their ballot by an
    abstention give an outcome ``a`` strictly prefers?

    For randomised procedures the influenced agents are collected over all
    branches and every branch pair is compared.
    """
    x = _sincere_vote(p, a)
    r = _rule_fn(rule)
    before = [(o, c, r(o)) for o, c in _outcomes(p, kind)]
    abstain = SmartBallot((DirectVote(ABSTAIN),))
    found = []
    candidates = sorted(possible_influence(p, a, kind) - {a})
    for b in candidates:
        for o2, _ in _outcomes(p.replace(b, abstain), kind):
            v2 = r(o2)
            for o1, c1, v1 in before:
                if _strictly_prefers(x, v2, v1):
                    found.append(GuruCounterexample(b, o1, o2, v1, v2, c1))
    return ParticipationReport(not found, tuple(found), len(candidates))
