"""Centralized full-horizon optimization over the time-expanded model.

The model has one binary occupancy decision per (aircraft, vertex, time)
with forced movement (no air holds), absorbing landings, and unit capacity
on every vertex per time and every undirected edge per interval.  The
solver certifies optimality of the summed flight times by best-first search
over joint states with the admissible, consistent heuristic "sum of
remaining graph distances" — every node popped with all aircraft landed is
provably optimal.  Plans are deterministic: successors are generated in
(aircraft id, canonical neighbor) order and ties pop in insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .hexlattice import AxialCoord, HexLattice
from .simcore import Resolver, SimState, TrafficConfiguration

# dense (V+1)^n * (horizon+1) workspace; guard against runaway memory
MAX_STATE_CELLS = 1 << 27

_WORKSPACES: dict = {}


class InfeasibleModel(RuntimeError):
    """No joint plan lands every aircraft within the horizon."""


class ModelTooLarge(ValueError):
    """The dense joint-state workspace would exceed the memory guard."""


@dataclass
class TimeExpandedModel:
    """Full-horizon joint planning model for one traffic configuration."""

    lattice: HexLattice
    config: TrafficConfiguration
    horizon: int
    starts: np.ndarray = field(repr=False, default=None)
    dests: np.ndarray = field(repr=False, default=None)

    @property
    def n_aircraft(self) -> int:
        return self.config.n_aircraft

    def n_occupancy_vars(self) -> int:
        return self.n_aircraft * self.lattice.n_vertices * (self.horizon + 1)


@dataclass
class JointPlan:
    """Conflict-free vertex sequences with provably minimal total time."""

    sequences: tuple
    arrival_times: tuple
    objective: int


def build_model(lat: HexLattice, cfg: TrafficConfiguration,
                horizon: int) -> TimeExpandedModel:
    """Validate and assemble the model; rejects a horizon below the longest
    unimpeded flight (the trivial lower bound)."""
    cfg.validate(lat)
    starts = np.array([lat.index_of(a.start) for a in cfg.aircraft], dtype=np.int32)
    dests = np.array([lat.index_of(a.destination) for a in cfg.aircraft], dtype=np.int32)
    lower = max(int(lat.dist[s, d]) for s, d in zip(starts, dests))
    if horizon < lower:
        raise ValueError(
            f"horizon {horizon} below the trivial lower bound {lower}")
    cells = (lat.n_vertices + 1) ** cfg.n_aircraft * (horizon + 1)
    if cells > MAX_STATE_CELLS:
        raise ModelTooLarge(
            f"joint state space needs {cells} cells (limit {MAX_STATE_CELLS}); "
            f"reduce the radius, aircraft count, or horizon")
    return TimeExpandedModel(lattice=lat, config=cfg, horizon=horizon,
                             starts=starts, dests=dests)


def _workspace(model: TimeExpandedModel) -> np.ndarray:
    key = (model.lattice.n_vertices, model.n_aircraft, model.horizon)
    ws = _WORKSPACES.get(key)
    if ws is None:
        cells = (model.lattice.n_vertices + 1) ** model.n_aircraft * (model.horizon + 1)
        ws = np.full(cells, -1, dtype=np.int32)
        _WORKSPACES[key] = ws
    return ws


def solve_exact(model: TimeExpandedModel) -> JointPlan:
    """Provably optimal joint plan, or InfeasibleModel within the horizon."""
    lat = model.lattice
    plan_out = np.full((model.horizon + 1, model.n_aircraft), -2, dtype=np.int32)
    ws = _workspace(model)
    status, objective, makespan = K.astar_joint(
        lat.nbr, lat.dist, model.starts, model.dests, model.horizon, ws, plan_out)
    if status != 0:
        raise InfeasibleModel(
            f"config {model.config.config_id}: no joint plan within "
            f"horizon {model.horizon}")
    sequences = []
    arrivals = []
    for i in range(model.n_aircraft):
        seq = []
        arrival = None
        for t in range(makespan + 1):
            v = int(plan_out[t, i])
            if v >= 0:
                seq.append(lat.coord_of(v))
            else:
                arrival = t
                seq.append(lat.coord_of(int(model.dests[i])))
                break
        arrivals.append(arrival)
        sequences.append(tuple(seq))
    return JointPlan(sequences=tuple(sequences), arrival_times=tuple(arrivals),
                     objective=int(objective))


def dump_model(model: TimeExpandedModel, path) -> None:
    """Plain-text constraint listing, one line each (debug aid, not
    load-bearing).  Vertices print as [q,r]; x(i,v,t) is occupancy."""
    lat = model.lattice
    T = model.horizon

    def vtx(i):
        v = lat.coord_of(int(i))
        return f"[{v.q},{v.r}]"

    with open(path, "w") as f:
        f.write(f"model config={model.config.config_id} aircraft={model.n_aircraft} "
                f"vertices={lat.n_vertices} horizon={T}\n")
        f.write("minimize sum_i arrival(i)\n")
        for i, a in enumerate(model.config.aircraft):
            f.write(f"init: x({a.id},{vtx(model.starts[i])},0) = 1\n")
        for i, a in enumerate(model.config.aircraft):
            d = int(model.dests[i])
            for t in range(T):
                for v in range(lat.n_vertices):
                    if v == d:
                        f.write(f"land: x({a.id},{vtx(v)},{t}) -> landed({a.id},{t})\n")
                        continue
                    nbrs = " + ".join(
                        f"x({a.id},{vtx(w)},{t + 1})"
                        for w in lat.nbr[v] if w >= 0)
                    f.write(f"move: x({a.id},{vtx(v)},{t}) <= {nbrs}\n")
        for t in range(T + 1):
            for v in range(lat.n_vertices):
                f.write(f"cap_vertex {vtx(v)} t={t}: "
                        f"sum_i x(i,{vtx(v)},{t}) <= 1\n")
        for t in range(T):
            for e in lat.edges():
                f.write(f"cap_edge [{e.a.q},{e.a.r}]-[{e.b.q},{e.b.r}] "
                        f"interval=[{t},{t + 1}): at most one traversal\n")


class StrategicResolver(Resolver):
    """Solves the whole scenario at initialization, then replays the plan."""

    name = "strategic"

    def __init__(self, horizon: int | None = None):
        self.horizon = horizon
        self.plan: JointPlan | None = None
        self._targets: np.ndarray | None = None

    def setup(self, lattice: HexLattice, config: TrafficConfiguration,
              fuel_capacity: int) -> None:
        horizon = self.horizon if self.horizon is not None else fuel_capacity
        model = build_model(lattice, config, horizon)
        self.plan = solve_exact(model)
        n = config.n_aircraft
        makespan = max(self.plan.arrival_times)
        self._targets = np.full((makespan, n), -1, dtype=np.int32)
        for i, seq in enumerate(self.plan.sequences):
            for t in range(1, len(seq)):
                self._targets[t - 1, i] = lattice.index_of(seq[t])

    def command_targets(self, sim: SimState) -> np.ndarray:
        return self._targets[sim.t].copy()


def strategic_resolver(cfg: TrafficConfiguration, lat: HexLattice,
                       horizon: int | None = None) -> StrategicResolver:
    """Resolver factory per the engine contract (solve happens at init)."""
    return StrategicResolver(horizon=horizon)
