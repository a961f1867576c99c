"""Command-line interface: gen, run, report, verify."""

from __future__ import annotations

import argparse
import sys

from .harness import (
    ALGORITHMS,
    read_results_csv,
    run_batch,
    summarize,
    write_detail_jsonl,
    write_results_csv,
    write_summary_csv,
)
from .hexlattice import build_lattice
from .scenarios import (
    enumerate_configs,
    generate_default,
    read_configs_jsonl,
    sample_configs,
    write_configs_jsonl,
)
from .verify import verify_determinism, verify_oracle, verify_pairwise


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hexsky",
        description="Multi-aircraft deconfliction experiments on hexagonal "
                    "lattice airspace")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate traffic configurations (JSONL)")
    g.add_argument("--radius", type=int, default=3)
    g.add_argument("--aircraft", type=int, required=True)
    g.add_argument("--min-dist", type=int, default=4)
    g.add_argument("--mode", choices=("enumerate", "sample", "auto"),
                   default="auto")
    g.add_argument("--count", type=int, default=5000,
                   help="sample size (sample/auto modes)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    r = sub.add_parser("run", help="run one algorithm over a configuration file")
    r.add_argument("--configs", required=True)
    r.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    r.add_argument("--fuel", type=int, default=20)
    r.add_argument("--parallelism", type=int, default=1)
    r.add_argument("--out", required=True)
    r.add_argument("--detail", default=None,
                   help="optional per-run trajectory/event JSONL path")
    r.add_argument("--timing", choices=("wall", "counter"), default="wall",
                   help="counter = deterministic clock (reproducibility runs)")

    rep = sub.add_parser("report", help="aggregate result CSVs into a summary CSV")
    rep.add_argument("--results", nargs="+", required=True)
    rep.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="built-in verification suites")
    v.add_argument("--suite", choices=("pairwise", "oracle", "determinism"),
                   required=True)
    v.add_argument("--radius", type=int, default=None)
    return p


def _cmd_gen(args) -> int:
    lat = build_lattice(args.radius)
    if args.mode == "enumerate":
        configs = enumerate_configs(lat, args.aircraft, args.min_dist)
    elif args.mode == "sample":
        configs = sample_configs(lat, args.aircraft, args.count,
                                 args.min_dist, args.seed)
    else:
        configs = generate_default(lat, args.aircraft, args.count,
                                   args.min_dist, args.seed)
    n = write_configs_jsonl(configs, args.out)
    print(f"wrote {n} configurations to {args.out}")
    return 0


def _cmd_run(args) -> int:
    configs = read_configs_jsonl(args.configs)
    records, details = run_batch(configs, args.algorithm, args.fuel,
                                 parallelism=args.parallelism,
                                 timing=args.timing,
                                 detail=args.detail is not None)
    write_results_csv(records, args.out)
    if args.detail is not None:
        write_detail_jsonl(details, args.detail)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_report(args) -> int:
    records = []
    for path in args.results:
        records.extend(read_results_csv(path))
    rows = summarize(records)
    write_summary_csv(rows, args.out)
    print(f"wrote {len(rows)} summary rows to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "pairwise":
        result = verify_pairwise(radius=args.radius or 3)
    elif args.suite == "oracle":
        result = verify_oracle(radius=args.radius or 2)
    else:
        result = verify_determinism(radius=args.radius or 3)
    for k, v in result.items():
        print(f"{k}: {v}")
    return 0 if result["passed"] else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "report":
            return _cmd_report(args)
        return _cmd_verify(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"hexsky: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
