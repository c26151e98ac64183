"""Command-line front end.

Exit codes: 0 success, 1 invalid input or profile, 2 capability error (a
procedure that cannot handle the profile), 3 enumeration cap exceeded.
Reports are JSON unless ``--pretty`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import fileformat, fixtures
from .analysis import VotingRule, apply_rule, check_cast_participation, check_guru_participation
from .arborescence import build_delegation_graph, to_dot
from .ballots import ABSTAIN, classify_language, validate_profile
from .certificates import enumerate_consistent
from .errors import (
    CapExceededError,
    DomainError,
    InvalidProfileError,
    NotLiquidError,
    ParameterError,
    SmartVoteError,
    UnreachableNodeError,
)
from .generators import (
    cnfsat_to_profile,
    fvs_to_profile,
    parse_dimacs,
    parse_edge_list,
    random_profile,
)
from .optimal import minmax_liquid, minsum_liquid
from .procedures import PROCEDURES, run_procedure

EXIT_OK, EXIT_INVALID, EXIT_CAPABILITY, EXIT_CAP = 0, 1, 2, 3


def load_profile(spec: str):
    """A file path, or ``fixtures/<name>`` / ``<name>`` for a packaged fixture."""
    path = Path(spec)
    if path.is_file():
        return fileformat.load(path)
    name = spec[len("fixtures/"):] if spec.startswith("fixtures/") else spec
    name = name[:-5] if name.endswith(".json") else name
    if name in fixtures.NAMES:
        return fixtures.load(name)
    raise FileNotFoundError(f"no such file or fixture: {spec}")


def _emit(payload, pretty_text=None, pretty=False):
    if pretty and pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps(payload, indent=2, sort_keys=False))


def _fmt(seq) -> str:
    return "(" + ",".join(str(x) for x in seq) + ")"


def _table(headers, rows) -> str:
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(headers)]
    line = "  ".join(str(h).ljust(w) for h, w in zip(headers, widths))
    out = [line, "-" * len(line)]
    for r in rows:
        out.append("  ".join(str(x).ljust(w) for x, w in zip(r, widths)))
    return "\n".join(out)


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    p = load_profile(args.path)
    violations = validate_profile(p)
    langs = classify_language(p)
    payload = {
        "valid": not violations,
        "languages": langs.names(),
        "violations": {a: [{"condition": v.condition, "levels": list(v.levels), "message": v.message} for v in vs]
                       for a, vs in violations.items()},
    }
    lines = [f"valid: {'yes' if not violations else 'no'}",
             "languages: " + (", ".join(langs.names()) or "none")]
    for a, vs in violations.items():
        for v in vs:
            lines.append(f"  {a}: condition ({v.condition}) {v.message}")
    _emit(payload, "\n".join(lines), args.pretty)
    return EXIT_OK if not violations else EXIT_INVALID


def _report_rows(report, rule):
    rows = []
    for r in report.rows:
        row = [r.outcome, r.certificate, r.certificate.rank, r.certificate.max_level]
        if report.rows and report.rows[0].probability is not None:
            row.append(r.probability)
        if rule:
            row.append(apply_rule(rule, r.outcome))
        rows.append(row)
    return rows


def cmd_unravel(args) -> int:
    p = load_profile(args.path)
    start = time.perf_counter()
    report = run_procedure(p, args.procedure, seed=args.seed, all_branches=args.all_branches, trace=args.trace,
                           bound=args.bound, first=args.first, liquid=args.liquid, cap=args.cap)
    elapsed = time.perf_counter() - start
    payload = report.to_dict()
    if args.rule:
        for d, r in zip(payload["results"], report.rows):
            d["rule"] = apply_rule(args.rule, r.outcome)
    if args.timing:
        payload["seconds"] = round(elapsed, 6)
    if args.dot:
        g = build_delegation_graph(p)
        tree = None
        if args.liquid:
            tree = (minsum_liquid(p) if args.procedure == "minsum" else minmax_liquid(p)).tree
        Path(args.dot).write_text(to_dot(g, tree))
    headers = ["outcome", "certificate", "rank", "max"]
    if report.rows and report.rows[0].probability is not None:
        headers.append("probability")
    if args.rule:
        headers.append(args.rule)
    lines = [f"procedure: {report.procedure}"]
    if report.objective is not None:
        lines.append(f"objective: {report.objective}")
    if report.decision is not None:
        lines.append(f"decision: {'yes' if report.decision else 'no'} (bound {args.bound})")
    lines.append(_table(headers, _report_rows(report, args.rule)))
    for e in report.trace:
        lines.append(f"  lev {e['lev']}: {e['agent']} := {e['vote']} ({'direct' if e['direct'] else 'computed'})")
    _emit(payload, "\n".join(lines), args.pretty)
    return EXIT_OK


def cmd_compare(args) -> int:
    p = load_profile(args.path)
    names = args.procedures or list(PROCEDURES)
    unknown = [n for n in names if n not in PROCEDURES]
    if unknown:
        raise ParameterError(f"unknown procedure(s) {unknown}; choose from {', '.join(PROCEDURES)}")
    payload = {}
    table = []
    for name in names:
        if name == "minmax":
            report = run_procedure(p, name, cap=args.cap)
            payload[name] = {"objective": report.objective, "set_size": len(report.rows),
                             "results": [r.to_dict() for r in report.rows]}
            table.append([name, f"{len(report.rows)} certificates", f"max {report.objective}", "", "", ""])
            continue
        report = run_procedure(p, name, seed=args.seed, all_branches=True)
        entry = report.to_dict()
        payload[name] = entry
        for r in report.rows:
            rule = apply_rule(args.rule, r.outcome) if args.rule else ""
            prob = "" if r.probability is None else str(r.probability)
            table.append([name, r.outcome, r.certificate, r.certificate.rank, prob, rule])
        if report.objective is not None:
            entry["objective"] = report.objective
    _emit(payload, _table(["procedure", "outcome", "certificate", "rank", "probability", args.rule or ""], table),
          args.pretty)
    return EXIT_OK


def _direct_voters(p):
    return [a for a in p.agents if len(p[a]) == 1 and p[a].backup != ABSTAIN]


def cmd_axioms(args) -> int:
    p = load_profile(args.path)
    agents = [args.agent] if args.agent else _direct_voters(p)
    results = {}
    lines = []
    for a in agents:
        if args.axiom == "cast":
            rep = check_cast_participation(p, a, args.rule, args.procedure)
            ces = [{"ballot": str(c.ballot), "before": list(c.before.votes), "after": list(c.after.votes),
                    "rule_before": c.rule_before, "rule_after": c.rule_after} for c in rep.counterexamples]
        else:
            rep = check_guru_participation(p, a, args.rule, args.procedure)
            ces = [{"abstainer": c.abstainer, "before": list(c.before.votes), "after": list(c.after.votes),
                    "before_certificate": list(c.before_certificate.levels),
                    "rule_before": c.rule_before, "rule_after": c.rule_after} for c in rep.counterexamples]
        results[a] = {"holds": rep.holds, "counterexamples": ces}
        lines.append(f"{a}: {'holds' if rep.holds else 'counterexample'}")
        for c in ces:
            detail = f"ballot {c['ballot']}" if "ballot" in c else f"{c['abstainer']} abstains"
            lines.append(f"  {detail}: {_fmt(c['before'])} -> {c['rule_before']}, "
                         f"{_fmt(c['after'])} -> {c['rule_after']}")
    payload = {"axiom": args.axiom, "rule": args.rule, "procedure": args.procedure, "agents": results,
               "holds": all(r["holds"] for r in results.values())}
    _emit(payload, "\n".join(lines), args.pretty)
    return EXIT_OK


def cmd_generate(args) -> int:
    bound = None
    if args.kind == "fvs":
        g = parse_edge_list(Path(args.input).read_text(), args.k)
        p, bound = fvs_to_profile(g, normalize_loops=args.normalize_loops)
    elif args.kind == "cnf":
        p, bound = cnfsat_to_profile(parse_dimacs(Path(args.input).read_text()))
    else:
        p = random_profile(args.n, args.language, args.levels, args.cycle_bias, args.seed)
    text = fileformat.dumps(p)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if bound is not None:
        print(f"bound M = {bound}", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    p = load_profile(args.path)
    found = enumerate_consistent(p, args.cap)
    payload = {"count": len(found), "certificates": [
        {"certificate": list(c.levels), "outcome": list(o.votes), "rank": c.rank, "max_level": c.max_level}
        for c, o in found]}
    rows = [[o, c, c.rank, c.max_level] for c, o in found]
    _emit(payload, f"{len(found)} consistent certificates\n" + _table(["outcome", "certificate", "rank", "max"], rows),
          args.pretty)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.name:
        sys.stdout.write(fileformat.dumps(fixtures.load(args.name)))
    else:
        print("\n".join(fixtures.NAMES))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smartvote", description="Unravel profiles of smart ballots.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, path=True):
        if path:
            sp.add_argument("path", help="profile JSON file or fixtures/<name>")
        sp.add_argument("--pretty", action="store_true", help="human-readable tables instead of JSON")

    sp = sub.add_parser("validate", help="check ballot validity and report the language")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("unravel", help="run one unravelling procedure")
    common(sp)
    sp.add_argument("--procedure", "-p", choices=PROCEDURES, default="u")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--all-branches", action="store_true", help="enumerate every random branch (ru, dru)")
    sp.add_argument("--trace", action="store_true", help="include the order votes were assigned")
    sp.add_argument("--bound", type=int, default=None, help="decide the bounded problem for this M")
    sp.add_argument("--first", action="store_true", help="minmax: return a single witness")
    sp.add_argument("--liquid", action="store_true", help="use the polynomial Liquid algorithms")
    sp.add_argument("--rule", choices=[r.value for r in VotingRule], default=None)
    sp.add_argument("--dot", default=None, help="write the delegation graph in Graphviz format")
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sp.set_defaults(func=cmd_unravel)

    sp = sub.add_parser("compare", help="run several procedures side by side")
    common(sp)
    sp.add_argument("procedures", nargs="*", metavar="PROCEDURE", help=f"any of {', '.join(PROCEDURES)}; default all")
    sp.add_argument("--rule", choices=[r.value for r in VotingRule], default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--cap", type=int, default=None)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("axioms", help="check cast- or guru-participation")
    common(sp)
    sp.add_argument("--axiom", choices=["cast", "guru"], required=True)
    sp.add_argument("--rule", choices=[r.value for r in VotingRule], default="rmaj")
    sp.add_argument("--procedure", "-p", choices=["u", "du", "ru", "dru"], default="u")
    sp.add_argument("--agent", default=None, help="default: every direct non-abstaining voter")
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("generate", help="write a generated profile")
    sp.add_argument("--kind", choices=["fvs", "cnf", "random"], required=True)
    sp.add_argument("--input", help="edge list (fvs) or DIMACS file (cnf)")
    sp.add_argument("--k", type=int, default=0, help="fvs budget")
    sp.add_argument("--normalize-loops", action="store_true")
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--language", choices=["bool", "liquid", "liquid*"], default="bool")
    sp.add_argument("--levels", type=int, default=3)
    sp.add_argument("--cycle-bias", type=float, default=0.3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", "-o", default=None)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("enumerate", help="list every consistent certificate")
    common(sp)
    sp.add_argument("--cap", type=int, default=None)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("fixtures", help="list packaged fixtures or print one")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and args.kind in ("fvs", "cnf") and not args.input:
        parser.error("--input is required for fvs and cnf")
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NotLiquidError, UnreachableNodeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except InvalidProfileError as exc:
        for a, vs in exc.violations.items():
            for v in vs:
                print(f"{a}: condition ({v.condition}) {v.message}", file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INVALID
    except (SmartVoteError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
