"""Command line: gen, build, verify, bench. Exit 0 = valid, 1 = invalid, 2 = usage error."""
from __future__ import annotations

import argparse
import sys

from . import generators
from .experiment import PARAM_KIND, as_weighted, build, load_config, run_experiment, stated_bound, validate
from .graph import read_graph, read_shortcuts, validate_hopset, validate_shortcut_set, write_graph, write_shortcuts
from .greedy import greedy_hopset, greedy_shortcut


class UsageError(Exception):
    pass


def _value(text: str):
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def _kv(items: list) -> dict:
    out = {}
    for it in items:
        if "=" not in it:
            raise UsageError(f"expected key=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k] = _value(v)
    return out


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopforge")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a graph")
    g.add_argument("kind", choices=sorted(generators.KINDS))
    g.add_argument("params", nargs="*", help="key=value, e.g. n=64 p=0.05 seed=7")
    g.add_argument("-o", "--output", required=True)

    b = sub.add_parser("build", help="construct a shortcut set or hopset")
    b.add_argument("--algo", required=True, choices=sorted(PARAM_KIND))
    b.add_argument("--beta", type=int)
    b.add_argument("--D", type=int)
    b.add_argument("--h", type=int, help="sample count for folklore")
    b.add_argument("-i", "--input", required=True)
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--d4", choices=["d4", "binarylift"], default="d4")
    b.add_argument("--oracle-check", action="store_true")
    b.add_argument("--trace", help="CSV path for the greedy round trace")

    v = sub.add_parser("verify", help="check a shortcut set or hopset exhaustively")
    v.add_argument("-i", "--input", required=True)
    v.add_argument("-H", "--shortcuts", required=True)
    v.add_argument("--beta", type=int, required=True)
    v.add_argument("--hopset", action="store_true")

    c = sub.add_parser("bench", help="run an experiment config")
    c.add_argument("--config", required=True)
    c.add_argument("-o", "--output", required=True)
    return p


def _param(args):
    kind = PARAM_KIND[args.algo]
    if kind is None:
        return None
    val = getattr(args, kind)
    if val is None:
        raise UsageError(f"--algo {args.algo} requires --{kind}")
    return val


def _cmd_build(args) -> int:
    g = read_graph(args.input)
    param = _param(args)
    if args.trace and args.algo in ("greedy", "greedy-hopset"):
        if args.algo == "greedy":
            h, trace = greedy_shortcut(g, param, check=args.oracle_check)
        else:
            h, trace = greedy_hopset(as_weighted(g), param, check=args.oracle_check)
        trace.to_csv(args.trace)
    elif args.trace:
        raise UsageError("--trace is only available for greedy and greedy-hopset")
    else:
        h = build(args.algo, g, param, args.seed, args.d4, args.oracle_check)
    write_shortcuts(h, args.output)
    rep = validate(args.algo, g, h, stated_bound(args.algo, g, param))
    print(f"{args.algo}: |H|={len(h)} {rep}")
    return 0 if rep.valid else 1


def _cmd_verify(args) -> int:
    g = read_graph(args.input)
    h = read_shortcuts(args.shortcuts)
    if h.n != g.n:
        raise UsageError(f"shortcut file has n={h.n}, graph has n={g.n}")
    if args.hopset:
        rep = validate_hopset(as_weighted(g), h, args.beta)
    else:
        rep = validate_shortcut_set(g, h, args.beta)
    print(rep)
    return 0 if rep.valid else 1


def _cmd_bench(args) -> int:
    rows = run_experiment(load_config(args.config), args.output)
    bad = [r for r in rows if r.status != "ok"]
    print(f"{len(rows)} runs, {len(bad)} not ok -> {args.output}")
    return 0 if not bad else 1


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        if args.cmd == "gen":
            write_graph(generators.generate(args.kind, **_kv(args.params)), args.output)
            return 0
        if args.cmd == "build":
            return _cmd_build(args)
        if args.cmd == "verify":
            return _cmd_verify(args)
        return _cmd_bench(args)
    except (UsageError, ValueError, TypeError, FileNotFoundError, KeyError) as e:
        print(f"hopforge: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
