"""Cross-check the solvers against exhaustive enumeration on many random profiles.

Larger and slower than the acceptance run; prints one line per violation
and a summary. Exit status is 1 if anything disagreed.
"""

import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import oracles  # noqa: E402
from smartvote.analysis import pareto_dominates  # noqa: E402
from smartvote.certificates import enumerate_consistent, random_witness, replay  # noqa: E402
from smartvote.generators import random_profile  # noqa: E402
from smartvote.greedy import UpdateKind, enumerate_random_branches, unravel  # noqa: E402
from smartvote.optimal import minmax_exact, minmax_liquid, minsum_exact, minsum_liquid  # noqa: E402


@dataclass
class Config:
    profiles: int = 2000
    max_agents: int = 8
    max_levels: int = 3
    cycle_bias: float = 0.5
    seed: int = 0
    permutation_oracle_up_to: int = 6  # n! orderings per certificate


def check(p, language, rng, cfg):
    """Yield a short description of each disagreement."""
    found = enumerate_consistent(p)
    table = {c.levels: o.votes for c, o in found}
    for c, o in found:
        order = random_witness(p, c, rng)
        if replay(p, c, order) != o:
            yield f"order-dependent outcome at {c.levels}"
    if p.n <= cfg.permutation_oracle_up_to and oracles.consistent_table(p) != table:
        yield "certificate table differs from the permutation oracle"
    best_sum = min(c.rank for c, _ in found)
    best_max = min(c.max_level for c, _ in found)
    r = minsum_exact(p)
    if r.objective != best_sum or {c.levels for c in r.certificates} != {
            lv for lv in table if sum(lv) == best_sum}:
        yield "minsum set differs from enumeration"
    for c in r.certificates:
        if any(pareto_dominates(d, c) for d, _ in found):
            yield f"minsum certificate {c.levels} is dominated"
    m = minmax_exact(p)
    if m.objective != best_max or len(m.solutions) != sum(1 for lv in table if max(lv) <= best_max):
        yield "minmax set differs from enumeration"
    ru = {b.certificate for b in enumerate_random_branches(p, "RU")}
    if not {b.certificate for b in enumerate_random_branches(p, "DRU")} <= ru:
        yield "DRU branch outside RU branches"
    for kind in UpdateKind:
        g = unravel(p, kind, rng.randrange(10**6))
        if table.get(g.certificate.levels) != g.outcome.votes:
            yield f"{kind.value} certificate is not consistent"
    if language != "bool":
        if minsum_liquid(p).certificate.rank != best_sum:
            yield "minsum_liquid rank is not optimal"
        if minmax_liquid(p).certificate.max_level != best_max:
            yield "minmax_liquid level is not optimal"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--profiles", type=int, default=Config.profiles)
    parser.add_argument("--max-agents", type=int, default=Config.max_agents)
    parser.add_argument("--max-levels", type=int, default=Config.max_levels)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args(argv)
    cfg = Config(profiles=args.profiles, max_agents=args.max_agents, max_levels=args.max_levels, seed=args.seed)
    rng = random.Random(cfg.seed)
    languages = ("bool", "liquid", "liquid*")
    bad = 0
    start = time.perf_counter()
    for i in range(cfg.profiles):
        language = languages[i % 3]
        n = rng.randint(1, cfg.max_agents)
        seed = rng.randrange(10**9)
        p = random_profile(n, language, cfg.max_levels, cfg.cycle_bias, seed)
        for problem in check(p, language, rng, cfg):
            bad += 1
            print(f"profile {i} ({language}, n={n}, seed={seed}): {problem}")
    print(f"{cfg.profiles} profiles, {bad} violations, {time.perf_counter() - start:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
