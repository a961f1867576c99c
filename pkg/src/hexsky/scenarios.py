"""Traffic configuration generation: exhaustive enumeration and seeded
uniform sampling.

A configuration is an ordered tuple of aircraft (priority = index), with
pairwise-distinct simultaneous starts and per-aircraft graph distance of at
least ``min_plan_length`` edges; destinations may coincide.  Enumeration
order is lexicographic over (start, destination) pairs in canonical vertex
order.  Sampling draws each aircraft's pair uniformly and independently
from the valid-pair list with numpy's PCG64 generator and rejects draws
with clashing starts, so accepted configurations are uniform over the
enumerable set.
"""

from __future__ import annotations

import json
from typing import Iterator

import numpy as np

from .hexlattice import AxialCoord, HexLattice
from .simcore import AircraftSpec, ConfigError, TrafficConfiguration

DEFAULT_MIN_PLAN_LENGTH = 4

# default experiment policy: enumerate when the configuration count stays
# below this, otherwise sample
ENUMERATION_CEILING = 200_000


def valid_pairs(lat: HexLattice, min_plan_length: int) -> list[tuple[AxialCoord, AxialCoord]]:
    """(start, destination) pairs at graph distance >= min_plan_length,
    in canonical vertex order."""
    return [(s, d)
            for s in lat.vertices
            for d in lat.vertices
            if lat.dist[lat.index_of(s), lat.index_of(d)] >= min_plan_length]


def count_configs(lat: HexLattice, n_aircraft: int,
                  min_plan_length: int = DEFAULT_MIN_PLAN_LENGTH) -> int:
    """Number of configurations the enumerator would yield."""
    pairs = valid_pairs(lat, min_plan_length)
    per_start: dict[AxialCoord, int] = {}
    for s, _ in pairs:
        per_start[s] = per_start.get(s, 0) + 1
    counts = list(per_start.values())

    def rec(remaining: list[int], k: int) -> int:
        if k == 0:
            return 1
        total = 0
        for i in range(len(remaining)):
            total += remaining[i] * rec(remaining[:i] + remaining[i + 1:], k - 1)
        return total

    if n_aircraft > len(counts):
        return 0
    return rec(counts, n_aircraft)


def _make_config(config_id: int, radius: int, chosen) -> TrafficConfiguration:
    return TrafficConfiguration(config_id, radius, tuple(
        AircraftSpec(i + 1, s, d, i + 1) for i, (s, d) in enumerate(chosen)))


def enumerate_configs(lat: HexLattice, n_aircraft: int,
                      min_plan_length: int = DEFAULT_MIN_PLAN_LENGTH
                      ) -> Iterator[TrafficConfiguration]:
    """Every configuration, deterministic lexicographic order, no symmetry
    deduplication (aircraft are labeled; priority = position)."""
    if n_aircraft < 1:
        raise ConfigError("n_aircraft must be >= 1")
    if n_aircraft > lat.n_vertices:
        raise ConfigError(
            f"{n_aircraft} aircraft cannot take distinct starts on "
            f"{lat.n_vertices} vertices")
    pairs = valid_pairs(lat, min_plan_length)
    config_id = 0
    chosen: list = []
    used: set = set()

    def rec():
        nonlocal config_id
        if len(chosen) == n_aircraft:
            yield _make_config(config_id, lat.radius, chosen)
            config_id += 1
            return
        for s, d in pairs:
            if s in used:
                continue
            chosen.append((s, d))
            used.add(s)
            yield from rec()
            chosen.pop()
            used.remove(s)

    return rec()


def sample_configs(lat: HexLattice, n_aircraft: int, count: int,
                   min_plan_length: int = DEFAULT_MIN_PLAN_LENGTH,
                   seed: int = 0) -> list[TrafficConfiguration]:
    """``count`` uniform i.i.d. draws from the enumerable set (rejection
    sampling on start clashes); identical seeds give identical lists."""
    if count < 1:
        raise ConfigError("count must be >= 1")
    if n_aircraft < 1:
        raise ConfigError("n_aircraft must be >= 1")
    pairs = valid_pairs(lat, min_plan_length)
    distinct_starts = len({s for s, _ in pairs})
    if not pairs or distinct_starts < n_aircraft:
        raise ConfigError(
            f"no feasible configurations for {n_aircraft} aircraft at "
            f"min_plan_length {min_plan_length} on radius {lat.radius}")
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    while len(out) < count:
        picks = rng.integers(0, len(pairs), size=n_aircraft)
        chosen = [pairs[int(k)] for k in picks]
        if len({s for s, _ in chosen}) != n_aircraft:
            continue
        out.append(_make_config(len(out), lat.radius, chosen))
    return out


def generate_default(lat: HexLattice, n_aircraft: int, count: int,
                     min_plan_length: int = DEFAULT_MIN_PLAN_LENGTH,
                     seed: int = 0) -> list[TrafficConfiguration]:
    """Exhaustive enumeration when the set is small enough, else seeded
    sampling of ``count`` configurations."""
    total = count_configs(lat, n_aircraft, min_plan_length)
    if total <= ENUMERATION_CEILING:
        return list(enumerate_configs(lat, n_aircraft, min_plan_length))
    return sample_configs(lat, n_aircraft, count, min_plan_length, seed)


def config_to_dict(cfg: TrafficConfiguration) -> dict:
    return {
        "config_id": cfg.config_id,
        "lattice_radius": cfg.lattice_radius,
        "aircraft": [
            {"id": a.id, "start": [a.start.q, a.start.r],
             "dest": [a.destination.q, a.destination.r], "priority": a.priority}
            for a in cfg.aircraft
        ],
    }


def config_from_dict(d: dict) -> TrafficConfiguration:
    return TrafficConfiguration(int(d["config_id"]), int(d["lattice_radius"]), tuple(
        AircraftSpec(int(a["id"]), AxialCoord(*map(int, a["start"])),
                     AxialCoord(*map(int, a["dest"])), int(a["priority"]))
        for a in d["aircraft"]))


def write_configs_jsonl(configs, path) -> int:
    n = 0
    with open(path, "w") as f:
        for cfg in configs:
            f.write(json.dumps(config_to_dict(cfg), separators=(", ", ": ")) + "\n")
            n += 1
    return n


def read_configs_jsonl(path) -> list[TrafficConfiguration]:
    out = []
    with open(path) as f:
        for line_no, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(config_from_dict(json.loads(line)))
            except (KeyError, ValueError, TypeError) as exc:
                raise ConfigError(f"{path}:{line_no}: malformed configuration "
                                  f"({exc})") from exc
    return out
