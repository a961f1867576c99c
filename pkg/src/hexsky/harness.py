"""Batch experiment driver and metrics pipeline.

Runs (algorithm x configuration) grids, computes per-config inefficiency
and failure indicators, and aggregates summary rows per (algorithm,
aircraft count).  Configurations are independent work items: the runner
may fan out over processes, then emits records sorted by config_id so the
output is identical at any parallelism degree.

Resolver compute seconds are measured by a monotonic clock around resolver
logic only (setup + per-step commands; simulation bookkeeping excluded).
``timing="counter"`` swaps in a deterministic per-run fake clock, which the
determinism suite uses to compare result files byte for byte; wall-clock
values are inherently non-reproducible.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .hexlattice import HexLattice, build_lattice
from .resolver_collab import CollaborativeResolver
from .resolver_implicit import ImplicitResolver
from .resolver_strategic import InfeasibleModel, StrategicResolver
from .simcore import (
    ScenarioOutcome,
    SimulationFault,
    TrafficConfiguration,
    init_simulation,
    run_to_completion,
)

ALGORITHMS = ("implicit", "collaborative", "strategic")

RESULTS_HEADER = ("config_id,algorithm,n_aircraft,termination,"
                  "mean_inefficiency,los_flag,fuel_emergency_flag,steps,"
                  "compute_seconds")
SUMMARY_HEADER = ("algorithm,n_aircraft,config_count,mean_inefficiency,"
                  "p_fuel_emergency,p_los,mean_compute_seconds")


@dataclass
class MetricsRecord:
    config_id: int
    algorithm: str
    n_aircraft: int
    termination: str
    per_aircraft_inefficiency: tuple
    mean_inefficiency: float
    los_flag: int
    fuel_emergency_flag: int
    steps: int
    resolver_compute_seconds: float
    # in-memory extras (not part of the results CSV schema)
    lattice_radius: int | None = None
    per_aircraft_deviation: tuple | None = None


@dataclass
class SummaryRow:
    algorithm: str
    n_aircraft: int
    config_count: int
    mean_inefficiency: float
    p_fuel_emergency: float
    p_los: float
    mean_compute_seconds: float
    per_aircraft_deviation_totals: dict | None = None


def make_resolver(algorithm: str):
    if algorithm == "implicit":
        return ImplicitResolver()
    if algorithm == "collaborative":
        return CollaborativeResolver()
    if algorithm == "strategic":
        return StrategicResolver()
    raise ValueError(f"unknown algorithm {algorithm!r}; "
                     f"expected one of {ALGORITHMS}")


def _counter_clock():
    """Deterministic stand-in clock: the k-th call returns k microseconds."""
    state = {"k": 0}

    def clock():
        state["k"] += 1
        return state["k"] * 1e-6

    return clock


_LATTICES: dict[int, HexLattice] = {}


def _lattice(radius: int) -> HexLattice:
    lat = _LATTICES.get(radius)
    if lat is None:
        lat = build_lattice(radius)
        _LATTICES[radius] = lat
    return lat


def run_one(cfg: TrafficConfiguration, algorithm: str, fuel_capacity: int = 20,
            timing: str = "wall") -> tuple[MetricsRecord, ScenarioOutcome | None]:
    """Run one configuration; faults are recorded, never raised."""
    lat = _lattice(cfg.lattice_radius)
    clock = time.perf_counter if timing == "wall" else _counter_clock()
    resolver = make_resolver(algorithm)
    outcome = None
    try:
        sim = init_simulation(lat, cfg, resolver, fuel_capacity, clock=clock)
        outcome = run_to_completion(sim)
        termination = outcome.termination
        seconds = outcome.resolver_compute_seconds
        flown = [len(tr) - 1 for tr in outcome.trajectories]
    except InfeasibleModel:
        # strategic could not allocate the airspace within the horizon
        termination = "allocation_failure"
        seconds = 0.0
        flown = [0] * cfg.n_aircraft
    except SimulationFault:
        termination = "fault"
        seconds = 0.0
        flown = [0] * cfg.n_aircraft
    shortest = [lat.graph_distance(a.start, a.destination) for a in cfg.aircraft]
    ineff = tuple(f / s for f, s in zip(flown, shortest))
    record = MetricsRecord(
        config_id=cfg.config_id,
        algorithm=algorithm,
        n_aircraft=cfg.n_aircraft,
        termination=termination,
        per_aircraft_inefficiency=ineff,
        mean_inefficiency=sum(ineff) / len(ineff),
        los_flag=1 if termination == "loss_of_separation" else 0,
        fuel_emergency_flag=1 if termination == "fuel_emergency" else 0,
        steps=outcome.steps_elapsed if outcome is not None else 0,
        resolver_compute_seconds=seconds,
        lattice_radius=cfg.lattice_radius,
        per_aircraft_deviation=tuple(f - s for f, s in zip(flown, shortest)),
    )
    return record, outcome


def _worker(args):
    cfg, algorithm, fuel_capacity, timing, detail = args
    record, outcome = run_one(cfg, algorithm, fuel_capacity, timing)
    return record, (outcome_to_dict(record, outcome) if detail else None)


def run_batch(configs, algorithm: str, fuel_capacity: int = 20,
              parallelism: int = 1, timing: str = "wall",
              detail: bool = False):
    """One MetricsRecord per configuration, ordered by config_id.

    Returns (records, details); details is None unless requested.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    configs = list(configs)
    jobs = [(cfg, algorithm, fuel_capacity, timing, detail) for cfg in configs]
    if parallelism <= 1 or len(configs) < 2:
        results = [_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            chunk = max(1, len(jobs) // (parallelism * 8))
            results = list(pool.map(_worker, jobs, chunksize=chunk))
    results.sort(key=lambda pair: pair[0].config_id)
    records = [r for r, _ in results]
    details = [d for _, d in results] if detail else None
    return records, details


def summarize(records) -> list[SummaryRow]:
    """Group by (algorithm, n_aircraft); arithmetic means over all configs
    in the group (fuel-emergency runs included); probabilities are flagged
    counts over the group size.  allocation_failure configs carry zero
    flags, so they never inflate either probability."""
    records = list(records)
    if not records:
        raise ValueError("no records to summarize")
    groups: dict = {}
    for r in records:
        groups.setdefault((r.algorithm, r.n_aircraft), []).append(r)
    rows = []
    for (algorithm, n_aircraft), rs in sorted(groups.items()):
        radii = {r.lattice_radius for r in rs if r.lattice_radius is not None}
        if len(radii) > 1:
            raise ValueError(
                f"group ({algorithm}, {n_aircraft}) mixes lattice radii {sorted(radii)}")
        count = len(rs)
        totals = None
        if all(r.per_aircraft_deviation is not None for r in rs):
            totals = {i + 1: 0 for i in range(n_aircraft)}
            for r in rs:
                for i, dev in enumerate(r.per_aircraft_deviation):
                    totals[i + 1] += dev
        rows.append(SummaryRow(
            algorithm=algorithm,
            n_aircraft=n_aircraft,
            config_count=count,
            mean_inefficiency=sum(r.mean_inefficiency for r in rs) / count,
            p_fuel_emergency=sum(r.fuel_emergency_flag for r in rs) / count,
            p_los=sum(r.los_flag for r in rs) / count,
            mean_compute_seconds=sum(r.resolver_compute_seconds for r in rs) / count,
            per_aircraft_deviation_totals=totals,
        ))
    return rows


# --- file formats ------------------------------------------------------------

def write_results_csv(records, path) -> None:
    with open(path, "w") as f:
        f.write(RESULTS_HEADER + "\n")
        for r in records:
            f.write(f"{r.config_id},{r.algorithm},{r.n_aircraft},"
                    f"{r.termination},{r.mean_inefficiency:.6f},{r.los_flag},"
                    f"{r.fuel_emergency_flag},{r.steps},"
                    f"{r.resolver_compute_seconds:.6f}\n")


def read_results_csv(path) -> list[MetricsRecord]:
    records = []
    with open(path) as f:
        header = f.readline().strip()
        if header != RESULTS_HEADER:
            raise ValueError(f"{path}: unexpected results header {header!r}")
        for line_no, line in enumerate(f, 2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 9:
                raise ValueError(f"{path}:{line_no}: expected 9 fields")
            records.append(MetricsRecord(
                config_id=int(parts[0]),
                algorithm=parts[1],
                n_aircraft=int(parts[2]),
                termination=parts[3],
                per_aircraft_inefficiency=(),
                mean_inefficiency=float(parts[4]),
                los_flag=int(parts[5]),
                fuel_emergency_flag=int(parts[6]),
                steps=int(parts[7]),
                resolver_compute_seconds=float(parts[8]),
            ))
    return records


def write_summary_csv(rows, path) -> None:
    with open(path, "w") as f:
        f.write(SUMMARY_HEADER + "\n")
        for r in rows:
            f.write(f"{r.algorithm},{r.n_aircraft},{r.config_count},"
                    f"{r.mean_inefficiency:.6f},{r.p_fuel_emergency:.6f},"
                    f"{r.p_los:.6f},{r.mean_compute_seconds:.6f}\n")


def outcome_to_dict(record: MetricsRecord, outcome: ScenarioOutcome | None) -> dict:
    d = {
        "config_id": record.config_id,
        "algorithm": record.algorithm,
        "termination": record.termination,
        "steps": record.steps,
        "trajectories": None,
        "events": None,
    }
    if outcome is not None:
        d["trajectories"] = [[[v.q, v.r] for v in tr] for tr in outcome.trajectories]
        d["events"] = [
            {"time": e.time, "kind": e.kind,
             "resource": ([e.resource.q, e.resource.r] if e.kind == "vertex"
                          else [[e.resource.a.q, e.resource.a.r],
                                [e.resource.b.q, e.resource.b.r]]),
             "aircraft": sorted(e.aircraft_ids)}
            for e in outcome.separation_events
        ]
    return d


def write_detail_jsonl(details, path) -> None:
    with open(path, "w") as f:
        for d in details:
            f.write(json.dumps(d, separators=(", ", ": ")) + "\n")
