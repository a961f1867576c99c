"""Benchmark the jitted kernels against the pure-Python fallback lane.

The two lanes are the same source (numba exposes the original function as
``.py_func``), so this measures the JIT speedup on the workloads that
dominate batch experiments: fused implicit runs, negotiation rounds, and
exact joint solves.

Usage: python benchmarks/kernel_bench.py [--pairs N] [--solves N]
"""

import argparse
import time

import numpy as np

from hexsky import _kernels as K
from hexsky.hexlattice import build_lattice
from hexsky.scenarios import sample_configs


def _arrays(lat, cfg):
    starts = np.array([lat.index_of(a.start) for a in cfg.aircraft], np.int32)
    dests = np.array([lat.index_of(a.destination) for a in cfg.aircraft], np.int32)
    prios = np.array([a.priority for a in cfg.aircraft], np.int32)
    return starts, dests, prios


def bench_fused(lat, configs, fn):
    t0 = time.perf_counter()
    for cfg in configs:
        starts, dests, prios = _arrays(lat, cfg)
        fn(lat.nbr, lat.dir_nbr, lat.dist, lat.coords, starts, dests, prios,
           20, 20, 0)
    return time.perf_counter() - t0


def bench_astar(lat, configs, fn):
    n = configs[0].n_aircraft
    cells = (lat.n_vertices + 1) ** n * 21
    ws = np.full(cells, -1, np.int32)
    plan = np.full((21, n), -2, np.int32)
    t0 = time.perf_counter()
    for cfg in configs:
        starts, dests, _ = _arrays(lat, cfg)
        fn(lat.nbr, lat.dist, starts, dests, 20, ws, plan)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--solves", type=int, default=200)
    args = ap.parse_args()

    if not K.USING_NUMBA:
        raise SystemExit("numba lane is disabled (HEXSKY_NO_NUMBA); the "
                         "benchmark needs both lanes in one process")

    lat = build_lattice(3)
    pair_cfgs = sample_configs(lat, 2, args.pairs, seed=1)
    solve_cfgs = sample_configs(lat, 3, args.solves, seed=2)

    # warm the JIT before timing
    bench_fused(lat, pair_cfgs[:5], K.run_fused)
    bench_astar(lat, solve_cfgs[:2], K.astar_joint)

    rows = []
    jit = bench_fused(lat, pair_cfgs, K.run_fused)
    py = bench_fused(lat, pair_cfgs, K.run_fused.py_func)
    rows.append(("implicit fused runs", args.pairs, jit, py))
    jit = bench_astar(lat, solve_cfgs, K.astar_joint)
    py = bench_astar(lat, solve_cfgs, K.astar_joint.py_func)
    rows.append(("exact joint solves (3 ac)", args.solves, jit, py))

    print(f"{'workload':<28}{'items':>8}{'numba':>12}{'python':>12}{'speedup':>10}")
    for name, items, tj, tp in rows:
        print(f"{name:<28}{items:>8}{tj:>11.3f}s{tp:>11.3f}s{tp / tj:>9.1f}x")


if __name__ == "__main__":
    main()
