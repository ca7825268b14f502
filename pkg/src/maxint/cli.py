"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import canonicalize
from .errors import MaxIntError
from .experiments import crossover_report, estimate_curves, query_seed
from .formats import (
    decode_collection,
    decode_index,
    encode_collection,
    encode_index,
    render_curve_svg,
    write_curve_csv,
)
from .index import build_prefix_index, query_max_lcp
from .models import ModelConfig
from .oracle import oracle_max_intersection
from .rng import derive_stream
from .verify import SUITES, run_suites


class UsageError(Exception):
    pass


def _model_config(args) -> ModelConfig:
    if args.model == "zipf":
        if args.n is None:
            raise UsageError("--n is required for the zipf model")
        return ModelConfig("zipf", n=args.n, m=args.m)
    if args.k is None:
        raise UsageError("--k is required for the hier model")
    return ModelConfig("hier", n=args.n, k=args.k)


def _add_model_args(p):
    p.add_argument("--model", choices=["zipf", "hier"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxint", description="Maximal intersection queries in random document models."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random collection")
    _add_model_args(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("index", help="build the sorted prefix index of a collection")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("query", help="answer a maximal-intersection query")
    p.add_argument("--collection", type=Path, required=True)
    p.add_argument("--index", type=Path, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--query-file", type=Path)
    src.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="also print the exact answer")

    p = sub.add_parser("curve", help="estimate any-match / prefix-match curves")
    _add_model_args(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--q-min", type=int, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--fresh-collections", action="store_true")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", type=Path, required=True)
    p.add_argument("--svg", type=Path)

    p = sub.add_parser("verify", help="run the built-in verification suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    return parser


def _read_query(path: Path):
    text = path.read_text(encoding="ascii")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) > 1:
        raise UsageError("query file must hold a single line of term ranks")
    tokens = lines[0].split() if lines else []
    try:
        return canonicalize(int(t) for t in tokens)
    except ValueError as e:
        raise UsageError(f"bad query file: {e}") from e


def cmd_gen(args) -> int:
    config = _model_config(args)
    if config.model == "zipf" and config.m > config.n ** 3:
        print(f"warning: m={config.m} exceeds n^3; outside the polynomial regime", file=sys.stderr)
    args.out.write_bytes(encode_collection(config.collection(args.seed)))
    return 0


def cmd_index(args) -> int:
    c = decode_collection(args.infile.read_bytes())
    args.out.write_bytes(encode_index(build_prefix_index(c)))
    return 0


def cmd_query(args) -> int:
    c = decode_collection(args.collection.read_bytes())
    idx = decode_index(args.index.read_bytes(), c)
    if args.random:
        if c.model == "external":
            raise UsageError("--random needs a generated (zipf or hier) collection")
        query = ModelConfig.of(c).document(derive_stream(query_seed(args.seed), 0))
    else:
        query = _read_query(args.query_file)
    match, stats = query_max_lcp(idx, query)
    print("query=" + " ".join(map(str, query)))
    print(f"doc_index={match.doc_index}")
    print(f"lcp={match.lcp}")
    print(f"containment_prefix={match.containment_prefix}")
    print(f"intersection={match.intersection}")
    print(f"sequence_comparisons={stats.sequence_comparisons}")
    print(f"term_comparisons={stats.term_comparisons}")
    if args.oracle:
        best = oracle_max_intersection(c, query)
        print(f"oracle_doc_index={best.doc_index}")
        print(f"oracle_intersection={best.intersection}")
    return 0


def cmd_curve(args) -> int:
    config = _model_config(args)
    if args.trials < 1 or args.q_min > args.q_max:
        raise UsageError("need --trials >= 1 and --q-min <= --q-max")
    mode = "fresh_per_trial" if args.fresh_collections else "shared"
    cd = estimate_curves(config, (args.q_min, args.q_max), args.trials, mode=mode, seed=args.seed)
    args.csv.write_bytes(write_curve_csv(cd))
    if args.svg is not None:
        args.svg.write_bytes(render_curve_svg(cd))
    rep = crossover_report(cd)
    print(f"q_any_star={rep.q_any_star}")
    print(f"q_prefix_star={rep.q_prefix_star}")
    print(f"gap={rep.gap}")
    print(f"theory_q={rep.theory_q:.6f}")
    return 0


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    checks = run_suites(names)
    for c in checks:
        print(c.line())
    return 0 if all(c.passed for c in checks) else 1


COMMANDS = {
    "gen": cmd_gen,
    "index": cmd_index,
    "query": cmd_query,
    "curve": cmd_curve,
    "verify": cmd_verify,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return COMMANDS[args.command](args)
    except (UsageError, MaxIntError, ValueError, OSError) as e:
        print(f"maxint: error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())
