"""Replay every packaged fixture through all six procedures and print the tables."""

import argparse
from dataclasses import dataclass

from smartvote import fixtures
from smartvote.errors import CapExceededError
from smartvote.procedures import PROCEDURES, run_procedure


@dataclass
class Config:
    names: tuple = tuple(fixtures.NAMES)
    procedures: tuple = PROCEDURES
    show: int = 30  # rows listed per procedure
    enumerate_up_to: int = 12  # larger profiles get one seeded run per random procedure
    seed: int = 0


def fmt(seq):
    return "(" + ",".join(str(x) for x in seq) + ")"


def report(name, cfg):
    p = fixtures.build(name)
    print(f"== {name}: {p.n} agents, domain {fmt(p.domain.alternatives)}")
    for proc in cfg.procedures:
        branches = p.n <= cfg.enumerate_up_to
        try:
            r = run_procedure(p, proc, seed=cfg.seed, all_branches=branches)
        except CapExceededError as exc:
            print(f"  {proc:<7} {exc}")
            continue
        label = f"  {proc:<7}"
        if r.objective is not None:
            label += f" objective {r.objective}"
        note = "" if branches or proc not in ("ru", "dru") else f" (seed {cfg.seed})"
        print(f"{label}, {len(r.rows)} row(s){note}")
        for row in r.rows[: cfg.show]:
            prob = f"  p={row.probability}" if row.probability is not None else ""
            print(f"      {fmt(row.outcome.votes)}  {fmt(row.certificate.levels)}{prob}")
        if len(r.rows) > cfg.show:
            print(f"      ... {len(r.rows) - cfg.show} more")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", help="fixtures to replay; default all")
    parser.add_argument("--show", type=int, default=Config.show, help="rows listed per procedure")
    args = parser.parse_args(argv)
    cfg = Config(names=tuple(args.names) or Config.names, show=args.show)
    for name in cfg.names:
        report(name, cfg)


if __name__ == "__main__":
    main()
