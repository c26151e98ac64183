"""Instance generators: the feedback-vertex-set and CNF reductions, and
seeded random profiles."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import dnf
from .ballots import (
    ABSTAIN,
    Delegation,
    DirectVote,
    Domain,
    Profile,
    SmartBallot,
    make_function,
    validate_ballot,
)
from .dnf import Literal
from .errors import FormulaError, ParameterError, SelfLoopError

BOOL_DOMAIN = Domain(("0", "1"))
TERNARY_DOMAIN = Domain(("0", "1", ABSTAIN))
LANGUAGES = ("bool", "liquid", "liquid*")


# -- feedback vertex set ------------------------------------------------------


@dataclass(frozen=True)
class DirectedGraphInstance:
    vertices: tuple
    edges: frozenset  # of (u, v)
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        known = set(self.vertices)
        for u, v in self.edges:
            if u not in known or v not in known:
                raise ParameterError(f"edge ({u}, {v}) uses an unknown vertex")

    @property
    def self_loops(self) -> list:
        return sorted(u for u, v in self.edges if u == v)

    def out_neighbours(self, v) -> list:
        return sorted(w for u, w in self.edges if u == v)


def remove_self_loops(g: DirectedGraphInstance) -> DirectedGraphInstance:
    """Replace each loop (v, v) by a 2-cycle through a fresh vertex v'.

    Any feedback vertex set using v' can use v instead, so the minimum size
    is unchanged.
    """
    vertices = list(g.vertices)
    edges = set(g.edges)
    for v in g.self_loops:
        dummy = v + "'"
        while dummy in vertices:
            dummy += "'"
        vertices.append(dummy)
        edges.discard((v, v))
        edges |= {(v, dummy), (dummy, v)}
    return DirectedGraphInstance(tuple(vertices), frozenset(edges), g.k)


def fvs_to_profile(g: DirectedGraphInstance, normalize_loops: bool = False):
    """Profile and bound M = |V| + k such that a certificate of rank <= M
    exists iff ``g`` has a feedback vertex set of size <= k."""
    if g.self_loops:
        if not normalize_loops:
            raise SelfLoopError(f"self-loops at {g.self_loops}; pass normalize_loops=True to transform them")
        g = remove_self_loops(g)
    ballots = {}
    for v in g.vertices:
        out = g.out_neighbours(v)
        if out:
            fn = make_function(dnf.complete([frozenset(Literal(u) for u in out)]))
            ballots[v] = SmartBallot((Delegation(fn), DirectVote("1")))
        else:
            ballots[v] = SmartBallot((DirectVote("1"),))
    return Profile(g.vertices, BOOL_DOMAIN, ballots), len(g.vertices) + g.k


def parse_edge_list(text: str, k: int = 0) -> DirectedGraphInstance:
    """``u v`` per line for an edge, a lone name for an isolated vertex, ``#`` comments."""
    vertices, edges = [], set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) > 2:
            raise ParameterError(f"line {lineno}: expected 'u v' or a single vertex")
        for t in tokens:
            if t not in vertices:
                vertices.append(t)
        if len(tokens) == 2:
            edges.add((tokens[0], tokens[1]))
    return DirectedGraphInstance(tuple(vertices), frozenset(edges), k)


# -- CNF ------------------------------------------------------------------------


@dataclass(frozen=True)
class CnfInstance:
    """Clauses of non-zero integers, DIMACS style: ``-2`` is the negation of variable 2."""

    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        if not clauses:
            raise ParameterError("a CNF needs at least one clause")
        for c in clauses:
            if not c or 0 in c:
                raise ParameterError(f"malformed clause {c}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def variables(self) -> list:
        return sorted({abs(l) for c in self.clauses for l in c})


def parse_dimacs(text: str) -> CnfInstance:
    clauses, current = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "cp%":
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if current:
                    clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    return CnfInstance(tuple(clauses))


def var_agent(i: int) -> str:
    return f"v{i}"


def clause_agent(j: int) -> str:
    return f"c{j}"


def _lit(l: int) -> Literal:
    return Literal(var_agent(abs(l)), l > 0)


def cnfsat_to_profile(phi: CnfInstance):
    """Profile and M = 2 such that a certificate with max level <= 2 exists iff ``phi`` is satisfiable."""
    cs = [clause_agent(j) for j in range(1, len(phi.clauses) + 1)]
    vs = [var_agent(i) for i in phi.variables]
    agents = ("x", "y") + tuple(vs) + tuple(cs)
    conj_c = frozenset(Literal(c) for c in cs)
    ballots = {
        "x": SmartBallot((DirectVote("1"),)),
        "y": SmartBallot((
            Delegation(make_function(dnf.complete([conj_c | {Literal("x")}]))),
            Delegation(make_function(dnf.complete([conj_c]))),
            DirectVote("1"),
        )),
    }
    for v in vs:
        ballots[v] = SmartBallot((Delegation(make_function("x")), DirectVote("0")))
    for c, clause in zip(cs, phi.clauses):
        tautology = any(-l in clause for l in clause)
        levels = [Delegation(make_function("y"))]
        if not tautology:
            cubes = [frozenset({Literal("y")})] + [frozenset({_lit(l)}) for l in set(clause)]
            levels.append(Delegation(make_function(dnf.complete(cubes))))
        levels.append(DirectVote("1"))
        ballots[c] = SmartBallot(tuple(levels))
    return Profile(agents, BOOL_DOMAIN, ballots), 2


# -- random profiles ---------------------------------------------------------------


def agent_names(n: int) -> tuple:
    if n <= 26:
        return tuple(chr(ord("a") + i) for i in range(n))
    return tuple(f"a{i}" for i in range(n))


def _random_formula(rng, pool):
    """A contingent complete DNF over some of ``pool``, or None."""
    cubes = []
    for _ in range(rng.randint(1, 3)):
        size = rng.randint(1, len(pool))
        cubes.append(frozenset(Literal(a, rng.random() < 0.6) for a in rng.sample(pool, size)))
    try:
        return dnf.complete(cubes)
    except FormulaError:
        return None


def _bool_delegation(rng, agent, others, ring, biased):
    for _ in range(20):
        size = rng.randint(1, min(4, len(others)))
        pool = rng.sample(others, size)
        if biased and ring not in pool:
            pool[0] = ring
        f = _random_formula(rng, pool)
        if f is not None:
            return Delegation(make_function(f))
    return None


def random_profile(n: int, language: str = "bool", max_levels: int = 3, cycle_bias: float = 0.3,
                   seed: Optional[int] = None) -> Profile:
    """A valid random profile.

    Each ballot has between 1 and ``max_levels`` levels, backup included.
    With probability ``cycle_bias`` an agent's first delegation involves the
    next agent in a ring, which makes level-1 delegation cycles likely.
    """
    if n < 1:
        raise ParameterError("n must be at least 1")
    if max_levels < 1:
        raise ParameterError("max_levels must be at least 1")
    if not 0 <= cycle_bias <= 1:
        raise ParameterError("cycle_bias must lie in [0, 1]")
    language = language.lower()
    if language not in LANGUAGES:
        raise ParameterError(f"language must be one of {LANGUAGES}")
    rng = random.Random(seed)
    agents = agent_names(n)
    domain = BOOL_DOMAIN if language == "bool" else TERNARY_DOMAIN
    ballots = {}
    for i, a in enumerate(agents):
        others = [b for b in agents if b != a]
        ring = agents[(i + 1) % n]
        wanted = rng.randint(0, max_levels - 1) if others else 0
        levels = []
        for h in range(wanted):
            biased = h == 0 and rng.random() < cycle_bias
            if language == "bool":
                lev = _bool_delegation(rng, a, others, ring, biased)
            else:
                used = {lv.fn.of for lv in levels}
                free = [b for b in others if b not in used]
                if not free:
                    break
                lev = Delegation(make_function(ring if biased and ring in free else rng.choice(free)))
            if lev is None:
                continue
            trial = SmartBallot(tuple(levels) + (lev, DirectVote("0")))
            if validate_ballot(trial, a):
                continue
            levels.append(lev)
        if language == "liquid*" and levels:
            backup = ABSTAIN
        else:
            backup = rng.choice(domain.alternatives)
        ballots[a] = SmartBallot(tuple(levels) + (DirectVote(backup),))
    return Profile(agents, domain, ballots)
