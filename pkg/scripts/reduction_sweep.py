"""Check both hardness reductions against brute force.

Every digraph on up to ``--exhaustive-vertices`` labelled vertices is
tried with every budget k, then random larger graphs; every CNF over
``--variables`` variables with at most ``--clauses`` distinct clauses
is compared with a truth-table SAT check.
"""

import argparse
import itertools
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import oracles  # noqa: E402
from smartvote.generators import (  # noqa: E402
    CnfInstance,
    DirectedGraphInstance,
    cnfsat_to_profile,
    fvs_to_profile,
)
from smartvote.optimal import bounded_minmax, bounded_minsum  # noqa: E402


@dataclass
class Config:
    exhaustive_vertices: int = 3
    random_graphs: int = 500
    max_vertices: int = 6
    variables: int = 3
    clauses: int = 3
    seed: int = 0


def fvs_agrees(vs, edges, k):
    p, M = fvs_to_profile(DirectedGraphInstance(tuple(vs), frozenset(edges), k), normalize_loops=True)
    return bool(bounded_minsum(p, M)) == (oracles.min_fvs(vs, edges) <= k)


def graphs(cfg, rng):
    for n in range(1, cfg.exhaustive_vertices + 1):
        vs = [f"v{i}" for i in range(n)]
        pairs = [(u, v) for u in vs for v in vs if u != v]
        for mask in range(2 ** len(pairs)):
            yield vs, {e for j, e in enumerate(pairs) if mask >> j & 1}
    for _ in range(cfg.random_graphs):
        vs = [f"v{i}" for i in range(rng.randint(1, cfg.max_vertices))]
        density = rng.random()
        yield vs, {(u, v) for u in vs for v in vs if u != v and rng.random() < density}


def cnfs(cfg):
    per_var = [(0, v, -v) for v in range(1, cfg.variables + 1)]
    clauses = [tuple(l for l in c if l) for c in itertools.product(*per_var)]
    clauses = [c for c in clauses if c]
    for m in range(1, cfg.clauses + 1):
        yield from itertools.combinations(clauses, m)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--exhaustive-vertices", type=int, default=Config.exhaustive_vertices)
    parser.add_argument("--random-graphs", type=int, default=Config.random_graphs)
    parser.add_argument("--variables", type=int, default=Config.variables)
    parser.add_argument("--clauses", type=int, default=Config.clauses)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args(argv)
    cfg = Config(args.exhaustive_vertices, args.random_graphs, Config.max_vertices, args.variables,
                 args.clauses, args.seed)
    rng = random.Random(cfg.seed)
    start = time.perf_counter()
    n_graphs = bad = 0
    for vs, edges in graphs(cfg, rng):
        n_graphs += 1
        for k in range(len(vs) + 1):
            if not fvs_agrees(vs, edges, k):
                bad += 1
                print(f"FVS mismatch: {vs} {sorted(edges)} k={k}")
    n_cnf = 0
    for phi in cnfs(cfg):
        n_cnf += 1
        if bool(bounded_minmax(*cnfsat_to_profile(CnfInstance(phi)))) != oracles.satisfiable(phi):
            bad += 1
            print(f"CNF mismatch: {phi}")
    print(f"{n_graphs} graphs, {n_cnf} formulas, {bad} mismatches, {time.perf_counter() - start:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
