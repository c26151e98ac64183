"""Delegation graphs of Liquid profiles and minimum arborescences.

For a Liquid profile each ballot level becomes a weighted edge into its
owner: ``(j, i, k)`` when agent ``i`` delegates to ``j`` at level ``k``,
``(r, i, k)`` when level ``k`` is ``i``'s direct vote. A spanning
arborescence rooted at ``r`` picks one level per agent such that every
chain of delegations ends at a direct vote, and its weight is the rank of
that certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import count
from typing import NamedTuple, Optional

from .ballots import DirectVote, Identity, Profile, classify_language
from .errors import NotLiquidError, UnreachableNodeError


class Edge(NamedTuple):
    source: object
    target: object
    weight: int


@dataclass(frozen=True)
class WeightedDigraph:
    nodes: frozenset
    edges: frozenset  # of Edge
    root: object

    def in_edges(self, v) -> list:
        return sorted((e for e in self.edges if e.target == v), key=_edge_key)

    def out_neighbours(self, u) -> list:
        return sorted({e.target for e in self.edges if e.source == u}, key=str)

    def reachable(self, edges=None) -> set:
        edges = self.edges if edges is None else edges
        adj = {}
        for e in edges:
            adj.setdefault(e.source, set()).add(e.target)
        seen = {self.root}
        todo = deque([self.root])
        while todo:
            u = todo.popleft()
            for v in adj.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return seen


def _edge_key(e):
    return (e.weight, str(e.source), str(e.target))


def root_name(agents) -> str:
    name = "r"
    while name in agents:
        name += "'"
    return name


def build_delegation_graph(p: Profile) -> WeightedDigraph:
    if not classify_language(p).in_liquid:
        raise NotLiquidError("delegation graphs need every delegation to be a single-agent identity")
    root = root_name(p.agents)
    edges = set()
    for i in p.agents:
        for k, lev in enumerate(p[i].levels, start=1):
            if isinstance(lev, DirectVote):
                edges.add(Edge(root, i, k))
            else:
                assert isinstance(lev.fn, Identity)
                edges.add(Edge(lev.fn.of, i, k))
    return WeightedDigraph(frozenset(p.agents) | {root}, frozenset(edges), root)


@dataclass(frozen=True)
class Arborescence:
    root: object
    parent: dict = field(hash=False)  # node -> Edge entering it

    @property
    def edges(self) -> frozenset:
        return frozenset(self.parent.values())

    @property
    def weight(self) -> int:
        return sum(e.weight for e in self.parent.values())

    def pairs(self) -> frozenset:
        return frozenset((e.source, e.target) for e in self.parent.values())


class _Node:
    """A contracted cycle during the recursion."""

    _ids = count(1)

    def __init__(self):
        self.name = f"~C{next(self._ids)}"

    def __str__(self):
        return self.name

    __repr__ = __str__


class _E(NamedTuple):
    u: object
    v: object
    w: int
    orig: Optional[object]  # the edge one recursion level up


def _find_cycle(best_in):
    colour = {}
    for start in sorted(best_in, key=str):
        path = []
        v = start
        while v in best_in and v not in colour:
            colour[v] = start
            path.append(v)
            v = best_in[v].u
        if v in best_in and colour.get(v) == start:
            return path[path.index(v):]
    return None


def _edmonds(nodes, edges, root):
    best_in = {}
    for v in nodes:
        if v == root:
            continue
        inc = [e for e in edges if e.v == v and e.u != v]
        if not inc:
            raise UnreachableNodeError([v])
        best_in[v] = min(inc, key=lambda e: (e.w, str(e.u)))
    cycle = _find_cycle(best_in)
    if cycle is None:
        return best_in
    members = set(cycle)
    c = _Node()
    contracted = []
    for e in edges:
        if e.u in members and e.v in members:
            continue
        if e.v in members:
            contracted.append(_E(e.u, c, e.w - best_in[e.v].w, e))
        elif e.u in members:
            contracted.append(_E(c, e.v, e.w, e))
        else:
            contracted.append(_E(e.u, e.v, e.w, e))
    sub = _edmonds((nodes - members) | {c}, contracted, root)
    out = {}
    for v, e in sub.items():
        if v is c:
            entering = e.orig
            out[entering.v] = entering
            for m in members:
                if m != entering.v:
                    out[m] = best_in[m]
        else:
            out[v] = e.orig
    return out


def edmonds_arborescence(g: WeightedDigraph) -> Arborescence:
    """Minimum-weight spanning arborescence by contracting and expanding cycles.

    Ties between entering edges go to the lower weight, then the source
    name in string order.
    """
    missing = set(g.nodes) - g.reachable()
    if missing:
        raise UnreachableNodeError(missing)
    edges = [_E(e.source, e.target, e.weight, None) for e in sorted(g.edges, key=_edge_key)]
    chosen = _edmonds(frozenset(g.nodes), edges, g.root)

    def original(e):
        while e.orig is not None:
            e = e.orig
        return Edge(e.u, e.v, e.w)

    return Arborescence(g.root, {v: original(e) for v, e in chosen.items()})


def dfs_arborescence(g: WeightedDigraph, edges) -> Arborescence:
    """Depth-first spanning tree from the root, visiting children in name order."""
    best = {}
    for e in edges:
        key = (e.source, e.target)
        if key not in best or e.weight < best[key].weight:
            best[key] = e
    adj = {}
    for (u, v), e in best.items():
        adj.setdefault(u, []).append(v)
    for u in adj:
        adj[u].sort(key=str)
    parent = {}
    seen = {g.root}
    stack = [(g.root, iter(adj.get(g.root, ())))]
    while stack:
        u, it = stack[-1]
        for v in it:
            if v not in seen:
                seen.add(v)
                parent[v] = best[(u, v)]
                stack.append((v, iter(adj.get(v, ()))))
                break
        else:
            stack.pop()
    missing = set(g.nodes) - seen
    if missing:
        raise UnreachableNodeError(missing)
    return Arborescence(g.root, parent)


def to_dot(g: WeightedDigraph, tree: Optional[Arborescence] = None) -> str:
    """Graphviz text; tree edges drawn bold."""
    chosen = tree.edges if tree is not None else frozenset()
    lines = ["digraph delegation {", f'  "{g.root}" [shape=box];']
    for e in sorted(g.edges, key=lambda e: (str(e.source), str(e.target), e.weight)):
        style = ", style=bold" if e in chosen else ""
        lines.append(f'  "{e.source}" -> "{e.target}" [label="{e.weight}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
