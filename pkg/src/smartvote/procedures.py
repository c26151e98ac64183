"""One entry point for all six unravelling procedures, returning a uniform report."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .ballots import Profile
from .certificates import Certificate, Outcome
from .greedy import UpdateKind, enumerate_random_branches, unravel
from .optimal import (
    bounded_minmax,
    bounded_minsum,
    minmax_exact,
    minmax_liquid,
    minsum_exact,
    minsum_liquid,
)

GREEDY = ("u", "du", "ru", "dru")
OPTIMAL = ("minsum", "minmax")
PROCEDURES = GREEDY + OPTIMAL


@dataclass(frozen=True)
class ReportRow:
    outcome: Outcome
    certificate: Certificate
    probability: Optional[Fraction] = None

    def to_dict(self) -> dict:
        d = {
            "outcome": list(self.outcome.votes),
            "certificate": list(self.certificate.levels),
            "rank": self.certificate.rank,
            "max_level": self.certificate.max_level,
        }
        if self.probability is not None:
            d["probability"] = str(self.probability)
        return d


@dataclass
class RunReport:
    procedure: str
    rows: list
    objective: Optional[int] = None
    decision: Optional[bool] = None  # answer of a bounded query
    seed: Optional[int] = None
    steps: Optional[int] = None
    trace: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"procedure": self.procedure}
        for key in ("objective", "decision", "seed", "steps"):
            value = getattr(self, key)
            if value is not None:
                d[key] = value
        d["results"] = [r.to_dict() for r in self.rows]
        if self.trace:
            d["trace"] = self.trace
        d.update(self.extra)
        return d


def run_procedure(p: Profile, name: str, seed: Optional[int] = None, all_branches: bool = False,
                  trace: bool = False, bound: Optional[int] = None, first: bool = False,
                  liquid: bool = False, cap: Optional[int] = None) -> RunReport:
    name = name.lower()
    if name not in PROCEDURES:
        raise ValueError(f"unknown procedure {name!r}; choose from {', '.join(PROCEDURES)}")
    if name in GREEDY:
        kind = UpdateKind.parse(name)
        if kind.randomized and all_branches:
            branches = enumerate_random_branches(p, kind, cap)
            rows = [ReportRow(b.outcome, b.certificate, b.probability) for b in branches]
            return RunReport(name, rows)
        r = unravel(p, kind, seed)
        events = [{"lev": e.lev, "agent": e.agent, "vote": e.vote, "direct": e.direct} for e in r.trace] if trace else []
        used_seed = (0 if seed is None else seed) if kind.randomized else None
        return RunReport(name, [ReportRow(r.outcome, r.certificate)], seed=used_seed, steps=r.step_count, trace=events)
    if bound is not None:
        d = (bounded_minsum if name == "minsum" else bounded_minmax)(p, bound)
        rows = [ReportRow(d.outcome, d.witness)] if d else []
        return RunReport(name, rows, decision=d.yes, extra={"bound": bound})
    if liquid:
        res = minsum_liquid(p) if name == "minsum" else minmax_liquid(p)
        c = res.certificate
        objective = c.rank if name == "minsum" else c.max_level
        tree = sorted([str(e.source), str(e.target), e.weight] for e in res.tree.edges)
        extra = {"tree": tree}
        if res.level is not None:
            extra["stopped_at_level"] = res.level
        return RunReport(name, [ReportRow(res.outcome, c)], objective=objective, extra=extra)
    if name == "minsum":
        res = minsum_exact(p)
    else:
        res = minmax_exact(p, cap=cap, first=first)
    rows = [ReportRow(o, c) for c, o in res.solutions]
    return RunReport(name, rows, objective=res.objective)
