"""Exact MinSum and MinMax unravellings.

General profiles are solved by depth-first branch and bound over one level
per agent, smallest level first. Each search node computes an optimistic
least fixpoint of the values every agent could still end up with: an
assigned agent may only use its chosen level, an unassigned agent any level
the bound still allows. A node is cut when an assigned agent can produce no
value, when some unassigned agent has no usable level, or (for MinSum) when
the partial rank plus the cheapest usable level of every remaining agent
exceeds the bound. Leaves are confirmed with ``check_consistent``.

Liquid profiles also have the polynomial algorithms: a minimum arborescence
for MinSum and growing the level graph until everything is reachable for
MinMax.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arborescence import (
    Arborescence,
    WeightedDigraph,
    build_delegation_graph,
    dfs_arborescence,
    edmonds_arborescence,
)
from .ballots import DirectVote, Profile
from .certificates import Certificate, Outcome, check_consistent, default_cap, outcome_of
from .errors import CapExceededError, UnreachableNodeError


@dataclass(frozen=True)
class OptimalResult:
    objective: int
    solutions: tuple  # of (Certificate, Outcome), in search order

    @property
    def certificates(self) -> frozenset:
        return frozenset(c for c, _ in self.solutions)

    @property
    def outcomes(self) -> frozenset:
        return frozenset(o for _, o in self.solutions)


@dataclass(frozen=True)
class Decision:
    """Answer to a bounded problem; ``witness`` is set iff the answer is yes."""

    witness: Optional[Certificate]
    outcome: Optional[Outcome] = None

    @property
    def yes(self) -> bool:
        return self.witness is not None

    def __bool__(self):
        return self.yes


class _Stop(Exception):
    pass


class _Search:
    def __init__(self, p: Profile, mode: str, bound: int, collect: bool, cap: Optional[int] = None,
                 ceiling: Optional[dict] = None):
        self.p = p
        self.ceiling = ceiling or {}  # optional per-agent maximum level
        self.mode = mode  # "sum" or "max"
        self.bound = bound
        self.collect = collect
        self.cap = cap
        self.order = p.agents
        self.found = []
        self.nodes = 0
        self._levels = {a: p[a].levels for a in p.agents}

    def _allowed(self, assigned, partial):
        remaining = len(self.order) - len(assigned)
        if self.mode == "sum":
            top = self.bound - partial - (remaining - 1)
        else:
            top = self.bound
        allowed = {}
        for a in self.order:
            if a in assigned:
                allowed[a] = (assigned[a],)
            else:
                hi = min(len(self._levels[a]), top, self.ceiling.get(a, top))
                allowed[a] = tuple(range(1, hi + 1))
        return allowed

    def _fixpoint(self, allowed):
        domain = self.p.domain
        P = {a: frozenset() for a in self.order}
        changed = True
        while changed:
            changed = False
            for a in self.order:
                vals = set(P[a])
                for h in allowed[a]:
                    lev = self._levels[a][h - 1]
                    if isinstance(lev, DirectVote):
                        vals.add(lev.value)
                    else:
                        vals |= lev.fn.possible_values(P, domain)
                if len(vals) != len(P[a]):
                    P[a] = frozenset(vals)
                    changed = True
        return P

    def _usable(self, a, levels, P):
        out = []
        for h in levels:
            lev = self._levels[a][h - 1]
            if isinstance(lev, DirectVote) or lev.fn.possible_values(P, self.p.domain):
                out.append(h)
        return out

    def _leaf(self, assigned, partial):
        c = Certificate(self.p.agents, tuple(assigned[a] for a in self.p.agents))
        result = check_consistent(self.p, c)
        if not result:
            return
        value = partial if self.mode == "sum" else c.max_level
        if self.mode == "sum" and value < self.bound:
            self.bound = value
            self.found = []
        self.found.append((c, result.witness.outcome))
        if not self.collect:
            raise _Stop
        if self.cap is not None and len(self.found) > self.cap:
            raise CapExceededError(len(self.found), self.cap, "optimal certificate set")

    def _dfs(self, i, assigned, partial):
        self.nodes += 1
        allowed = self._allowed(assigned, partial)
        if any(not lv for lv in allowed.values()):
            return
        P = self._fixpoint(allowed)
        if any(not P[a] for a in assigned):
            return
        usable = {}
        for a in self.order[i:]:
            usable[a] = self._usable(a, allowed[a], P)
            if not usable[a]:
                return
        if self.mode == "sum" and partial + sum(u[0] for u in usable.values()) > self.bound:
            return
        if i == len(self.order):
            self._leaf(assigned, partial)
            return
        a = self.order[i]
        for h in usable[a]:
            if self.mode == "sum" and partial + h + (len(self.order) - i - 1) > self.bound:
                break
            assigned[a] = h
            self._dfs(i + 1, assigned, partial + h)
            del assigned[a]

    def run(self) -> list:
        try:
            self._dfs(0, {}, 0)
        except _Stop:
            pass
        return self.found


def last_level_certificate(p: Profile) -> Certificate:
    """Every agent on its backup vote; always consistent."""
    return Certificate(p.agents, tuple(len(p[a]) for a in p.agents))


def bounded_minsum(p: Profile, M: int) -> Decision:
    """Is there a consistent certificate of rank at most ``M``?"""
    if M < p.n:
        return Decision(None)
    found = _Search(p, "sum", M, collect=False).run()
    return Decision(*found[0]) if found else Decision(None)


def minsum_exact(p: Profile) -> OptimalResult:
    """Every consistent certificate of minimum rank."""
    start = last_level_certificate(p).rank
    found = _Search(p, "sum", start, collect=True).run()
    return OptimalResult(found[0][0].rank, tuple(found))


def bounded_minmax(p: Profile, M: int) -> Decision:
    """Is there a consistent certificate using no level above ``M``?"""
    if M < 1:
        return Decision(None)
    found = _Search(p, "max", M, collect=False).run()
    return Decision(*found[0]) if found else Decision(None)


def dominating_certificate(p: Profile, c: Certificate) -> Optional[Certificate]:
    """A consistent certificate Pareto dominating ``c``, or None.

    Dominating means entrywise no larger and strictly smaller rank, so this
    is a bounded MinSum search with every agent capped at its level in ``c``.
    """
    found = _Search(p, "sum", c.rank - 1, collect=False, ceiling=c.to_dict()).run()
    return found[0][0] if found else None


def minmax_value(p: Profile) -> int:
    for M in range(1, p.max_levels + 1):
        if bounded_minmax(p, M):
            return M
    raise AssertionError("the all-backup certificate is always consistent")


def minmax_exact(p: Profile, cap: Optional[int] = None, first: bool = False) -> OptimalResult:
    """Least feasible maximum level and every consistent certificate within it.

    The tied set can be very large; more than ``cap`` members raises
    CapExceededError. With ``first`` only one witness is returned.
    """
    M = minmax_value(p)
    if first:
        d = bounded_minmax(p, M)
        return OptimalResult(M, ((d.witness, d.outcome),))
    cap = default_cap() if cap is None else cap
    found = _Search(p, "max", M, collect=True, cap=cap).run()
    return OptimalResult(M, tuple(found))


@dataclass(frozen=True)
class LiquidResult:
    certificate: Certificate
    outcome: Outcome
    tree: Arborescence
    graph: WeightedDigraph
    level: Optional[int] = None  # level at which minmax_liquid stopped

    def __iter__(self):
        return iter((self.certificate, self.outcome))


def _from_tree(p, g, tree, level=None):
    c = Certificate(p.agents, tuple(tree.parent[a].weight for a in p.agents))
    return LiquidResult(c, outcome_of(p, c), tree, g, level)


def minsum_liquid(p: Profile) -> LiquidResult:
    g = build_delegation_graph(p)
    return _from_tree(p, g, edmonds_arborescence(g))


def minmax_liquid(p: Profile) -> LiquidResult:
    g = build_delegation_graph(p)
    agents = set(p.agents)
    for lev in range(1, p.max_levels + 1):
        edges = [e for e in g.edges if e.weight <= lev]
        if agents <= g.reachable(edges):
            return _from_tree(p, g, dfs_arborescence(g, edges), lev)
    raise UnreachableNodeError(agents - g.reachable())
