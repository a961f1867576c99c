"""Built-in verification suites exposed through the command line.

``pairwise``: exhaustive 2-aircraft sweep of the implicit resolver (every
ordered start/destination combination at the given radius) expecting every
run to land cleanly.  ``oracle``: exact-solver objectives against the
brute-force joint enumeration, plus event-free plan replays.
``determinism``: byte-identical result files across repetitions and
parallelism degrees under the deterministic clock.
"""

from __future__ import annotations

import itertools
import os
import tempfile

import numpy as np

from . import _kernels as K
from .harness import run_batch, summarize, write_results_csv, write_summary_csv
from .hexlattice import build_lattice
from .oracle import joint_enumeration_optimum
from .resolver_strategic import build_model, solve_exact, strategic_resolver
from .scenarios import sample_configs, valid_pairs
from .simcore import (
    AircraftSpec,
    TrafficConfiguration,
    init_simulation,
    replay_separation_check,
    run_to_completion,
)

_TERMS = ("all_landed", "loss_of_separation", "fuel_emergency",
          "allocation_failure", "step_limit")


def verify_pairwise(radius: int = 3, fuel_capacity: int = 20,
                    min_plan_length: int = 4) -> dict:
    """Exhaustive 2-aircraft implicit sweep; passes iff 100% all_landed."""
    lat = build_lattice(radius)
    pairs = [(lat.index_of(s), lat.index_of(d))
             for s, d in valid_pairs(lat, min_plan_length)]
    counts = dict.fromkeys(_TERMS, 0)
    total = 0
    for s1, d1 in pairs:
        for s2, d2 in pairs:
            if s1 == s2:
                continue
            starts = np.array([s1, s2], dtype=np.int32)
            dests = np.array([d1, d2], dtype=np.int32)
            prios = np.array([1, 2], dtype=np.int32)
            term, _, _ = K.run_fused(lat.nbr, lat.dir_nbr, lat.dist,
                                     lat.coords, starts, dests, prios,
                                     fuel_capacity, fuel_capacity, 0)
            counts[_TERMS[int(term)]] += 1
            total += 1
    return {
        "suite": "pairwise",
        "radius": radius,
        "configs": total,
        "terminations": counts,
        "passed": counts["all_landed"] == total and total > 0,
    }


def verify_oracle(radius: int = 2, n3_count: int = 120, seed: int = 2024,
                  horizon: int = 20) -> dict:
    """solve_exact vs joint enumeration on every 2-aircraft configuration at
    the given radius plus seeded 3-aircraft samples; replays must be clean."""
    lat = build_lattice(radius)
    pairs = valid_pairs(lat, 4)
    mismatches = 0
    replay_events = 0
    checked2 = 0
    for (s1, d1), (s2, d2) in itertools.product(pairs, repeat=2):
        if s1 == s2:
            continue
        cfg = TrafficConfiguration(checked2, radius, (
            AircraftSpec(1, s1, d1, 1), AircraftSpec(2, s2, d2, 2)))
        plan = solve_exact(build_model(lat, cfg, horizon))
        oracle = joint_enumeration_optimum(lat, [s1, s2], [d1, d2], horizon)
        if plan.objective != oracle:
            mismatches += 1
        if replay_separation_check(plan.sequences):
            replay_events += 1
        checked2 += 1
    checked3 = 0
    for cfg in sample_configs(lat, 3, n3_count, 4, seed):
        starts = [a.start for a in cfg.aircraft]
        dests = [a.destination for a in cfg.aircraft]
        plan = solve_exact(build_model(lat, cfg, horizon))
        oracle = joint_enumeration_optimum(lat, starts, dests, horizon)
        if plan.objective != oracle:
            mismatches += 1
        # full engine replay through the separation monitor
        resolver = strategic_resolver(cfg, lat)
        out = run_to_completion(init_simulation(lat, cfg, resolver, horizon))
        if out.termination != "all_landed" or out.separation_events:
            replay_events += 1
        checked3 += 1
    return {
        "suite": "oracle",
        "radius": radius,
        "pair_configs": checked2,
        "triple_configs": checked3,
        "objective_mismatches": mismatches,
        "replay_violations": replay_events,
        "passed": mismatches == 0 and replay_events == 0 and checked3 >= 100,
    }


def verify_determinism(radius: int = 3, n_aircraft: int = 3, count: int = 40,
                       seed: int = 11, fuel_capacity: int = 20) -> dict:
    """Same seed, any parallelism, two repetitions: byte-identical results
    and summary CSVs (deterministic clock isolates the one physical input)."""
    lat = build_lattice(radius)
    configs = sample_configs(lat, n_aircraft, count, 4, seed)
    reference: dict[str, bytes] = {}
    identical = True
    for algorithm in ("implicit", "collaborative", "strategic"):
        for parallelism in (1, 2):
            for rep in range(2):
                records, _ = run_batch(configs, algorithm, fuel_capacity,
                                       parallelism=parallelism,
                                       timing="counter")
                rows = summarize(records)
                with tempfile.TemporaryDirectory() as tmp:
                    rp = os.path.join(tmp, "results.csv")
                    sp = os.path.join(tmp, "summary.csv")
                    write_results_csv(records, rp)
                    write_summary_csv(rows, sp)
                    blob = open(rp, "rb").read() + open(sp, "rb").read()
                if algorithm not in reference:
                    reference[algorithm] = blob
                elif blob != reference[algorithm]:
                    identical = False
    return {
        "suite": "determinism",
        "configs": count,
        "algorithms": 3,
        "passed": identical,
    }
