"""Command-line interface.

Exit codes: 0 success, 1 input or usage error, 2 a mathematical invariant
failed (always with a replayable counterexample on stdout).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io as spaceio
from .checks import characterizations, internal_count, run_battery
from .core import diameter, spectrum
from .counting import enum_cap, enumerate_sb_trees, otter_count
from .errors import CapExceeded, UltrametricError
from .gh import gh_distance, perturb_to_u
from .graphs import graph_to_dot, graph_to_json, level_graph, strip_isolated
from .trees import (
    ball_family,
    balls_to_dicts,
    build_representing_tree,
    check_strictly_binary_distinct,
    tree_to_dot,
    tree_to_json,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _load(path, ids=None):
    if path.lower().endswith(".csv"):
        return spaceio.load_csv(path, ids.split(",") if ids else None)
    return spaceio.load(path)


def cmd_analyze(args) -> int:
    X = _load(args.input, args.ids)
    verdicts = characterizations(X)
    agree = len(set(verdicts.values())) == 1
    report = {
        "n": len(X),
        "spectrum": [str(v) for v in spectrum(X)],
        "in_U": verdicts,
        "agreement": agree,
    }
    if len(X) >= 2:
        diam, pairs = diameter(X)
        T = build_representing_tree(X)
        check = check_strictly_binary_distinct(T)
        report.update(
            diameter=str(diam),
            diametral_pairs=[list(p) for p in pairs],
            ball_count=len(ball_family(X)),
            tree={
                "leaves": len(X),
                "internal_nodes": internal_count(X),
                "strictly_binary": check.is_strictly_binary,
                "labels_distinct": check.labels_distinct,
            },
        )
    else:
        report.update(diameter="0", diametral_pairs=[], ball_count=0,
                      tree={"leaves": 1, "internal_nodes": 0, "strictly_binary": True, "labels_distinct": True})
    if args.format == "table":
        for key, value in report.items():
            print(f"{key:16} {value}")
    else:
        _emit(report)
    if not agree:
        _emit({"counterexample": spaceio.space_to_dict(X)})
        return 2
    return 0


def cmd_tree(args) -> int:
    T = build_representing_tree(_load(args.input, args.ids))
    sys.stdout.write(tree_to_dot(T) if args.format == "dot" else tree_to_json(T))
    return 0


def cmd_graph(args) -> int:
    X = _load(args.input, args.ids)
    level = Fraction(args.level) if args.level else diameter(X)[0]
    G = level_graph(X, level)
    if args.strip:
        G = strip_isolated(G)
    sys.stdout.write(graph_to_dot(G) if args.format == "dot" else graph_to_json(G))
    return 0


def cmd_balls(args) -> int:
    _emit(balls_to_dicts(ball_family(_load(args.input, args.ids))))
    return 0


def cmd_count(args) -> int:
    n = args.leaves
    if n < 1:
        raise UsageError("--leaves must be positive")
    count = 1 if n == 1 else otter_count(n - 1)
    if not args.enumerate:
        print(count)
        return 0
    codes = enumerate_sb_trees(n)
    print(count)
    for c in codes:
        print(c)
    if len(codes) != count:
        print(f"mismatch: recurrence {count}, enumeration {len(codes)}", file=sys.stderr)
        return 2
    return 0


def cmd_perturb(args) -> int:
    try:
        eps = Fraction(args.eps)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--eps is not a rational number: {args.eps}") from exc
    if eps <= 0:
        raise UsageError("--eps must be positive")
    X = _load(args.input, args.ids)
    rep = perturb_to_u(X, eps)
    doc = rep.to_dict()
    v = characterizations(rep.output)
    ok = all(v.values()) and rep.sup_deviation < eps and len(rep.output) == len(X)
    doc["checks_passed"] = ok
    if args.out:
        spaceio.dump(rep.output, args.out)
    _emit(doc)
    if not ok:
        _emit({"counterexample": spaceio.space_to_dict(X), "eps": str(eps)})
        return 2
    return 0


def cmd_gh(args) -> int:
    X, Y = _load(args.input_a, args.ids), _load(args.input_b, args.ids_b)
    res = gh_distance(X, Y)
    if args.format == "json":
        _emit(res.to_dict())
    else:
        print(f"{res.value} {res.status}")
    return 0


def cmd_check(args) -> int:
    if args.n < 1 or args.samples < 1:
        raise UsageError("--n and --samples must be positive")
    res = run_battery(args.n, args.samples, args.seed)
    summary = {
        "samples": res.samples,
        "passed": res.passed,
        "failed": len(res.failures),
        "global_failures": res.global_failures,
    }
    if res.failures:
        i, X, names = res.failures[0]
        summary["counterexample"] = {"sample": i, "failed": names, "space": spaceio.space_to_dict(X)}
    _emit(summary)
    return 0 if res.ok else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gomory-hu", description="Analyse finite ultrametric spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def space_cmd(name, func, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("input")
        s.add_argument("--ids", help="comma-separated point ids for CSV input")
        s.set_defaults(func=func)
        return s

    s = space_cmd("analyze", cmd_analyze, "spectrum, membership in U and tree statistics")
    s.add_argument("--format", choices=["json", "table"], default="json")
    s = space_cmd("tree", cmd_tree, "representing tree")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s = space_cmd("graph", cmd_graph, "level graph at a distance (default: the diameter)")
    s.add_argument("--level")
    s.add_argument("--strip", action="store_true", help="drop isolated vertices")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    space_cmd("balls", cmd_balls, "ball family")
    s = space_cmd("perturb", cmd_perturb, "perturb into U within eps")
    s.add_argument("--eps", required=True)
    s.add_argument("--out", help="write the perturbed space document here")

    s = sub.add_parser("count", help="count strictly binary trees with N leaves")
    s.add_argument("--leaves", type=int, required=True)
    s.add_argument("--enumerate", action="store_true")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("gh", help="Gromov-Hausdorff distance between two spaces")
    s.add_argument("input_a")
    s.add_argument("input_b")
    s.add_argument("--ids")
    s.add_argument("--ids-b")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_gh)

    s = sub.add_parser("check", help="run the invariant battery on random spaces")
    s.add_argument("--n", type=int, default=8)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"error: {exc} (cap {enum_cap()})", file=sys.stderr)
        return 1
    except UltrametricError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
