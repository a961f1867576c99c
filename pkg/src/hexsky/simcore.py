"""Discrete-time simulation engine with pluggable per-step resolvers.

All airborne aircraft commit their moves simultaneously: each traverses one
edge per time step (air holds are not allowed), landing is forced on arrival
at the destination, and the separation monitor flags any co-occupation of a
vertex at an integer time or of an undirected edge during a step interval.
A landed aircraft occupies its destination at the arrival instant and frees
it afterwards, so coincident destinations only require distinct arrival
times.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .hexlattice import AxialCoord, EdgeId, HexLattice, heading_from_index

AIRBORNE = "airborne"
LANDED = "landed"
FUEL_EMERGENCY = "fuel_emergency"
COLLIDED = "collided"
_STATUS_NAMES = (AIRBORNE, LANDED, FUEL_EMERGENCY, COLLIDED)

TERMINATIONS = ("all_landed", "loss_of_separation", "fuel_emergency",
                "allocation_failure", "step_limit")

DEFAULT_FUEL_CAPACITY = 20


class ConfigError(ValueError):
    """A traffic configuration violates its invariants."""


class SimulationFault(RuntimeError):
    """A resolver returned a missing or non-adjacent command (not an LoS)."""


class AllocationFailure(RuntimeError):
    """A negotiation participant exhausted every candidate claim."""


@dataclass(frozen=True)
class AircraftSpec:
    id: int
    start: AxialCoord
    destination: AxialCoord
    priority: int


@dataclass(frozen=True)
class TrafficConfiguration:
    """One experiment instance: N aircraft with starts/destinations/priorities."""

    config_id: int
    lattice_radius: int
    aircraft: tuple[AircraftSpec, ...]

    @property
    def n_aircraft(self) -> int:
        return len(self.aircraft)

    def validate(self, lat: HexLattice) -> None:
        if lat.radius != self.lattice_radius:
            raise ConfigError(
                f"config {self.config_id}: lattice radius {lat.radius} != "
                f"declared {self.lattice_radius}")
        n = len(self.aircraft)
        if n == 0:
            raise ConfigError(f"config {self.config_id}: no aircraft")
        starts = [a.start for a in self.aircraft]
        if len(set(starts)) != n:
            raise ConfigError(f"config {self.config_id}: start vertices must be distinct")
        if sorted(a.priority for a in self.aircraft) != list(range(1, n + 1)):
            raise ConfigError(f"config {self.config_id}: priorities must be a permutation of 1..{n}")
        if len({a.id for a in self.aircraft}) != n:
            raise ConfigError(f"config {self.config_id}: aircraft ids must be unique")
        for a in self.aircraft:
            if a.start not in lat or a.destination not in lat:
                raise ConfigError(f"config {self.config_id}: aircraft {a.id} off-lattice")
            if a.start == a.destination:
                raise ConfigError(f"config {self.config_id}: aircraft {a.id} starts at its destination")


@dataclass(frozen=True)
class MoveCommand:
    aircraft_id: int
    next_vertex: AxialCoord


@dataclass(frozen=True)
class SeparationEvent:
    """kind 'vertex': >=2 aircraft at one vertex at time t.
    kind 'edge': >=2 aircraft on one undirected edge during [t, t+1)."""

    time: int
    kind: str
    resource: object  # AxialCoord or EdgeId
    aircraft_ids: frozenset


@dataclass
class AircraftState:
    id: int
    priority: int
    position: AxialCoord
    heading: int
    destination: AxialCoord
    fuel: int
    distance_flown: int
    status: str


@dataclass
class ScenarioOutcome:
    config_id: int
    algorithm_name: str
    termination: str
    trajectories: tuple[tuple[AxialCoord, ...], ...]
    separation_events: tuple[SeparationEvent, ...]
    steps_elapsed: int
    resolver_compute_seconds: float


class Resolver:
    """Per-step command source; subclasses override command_targets.

    ``command_targets`` returns an int32 array of next-vertex indices, one
    per aircraft (entries for non-airborne aircraft are ignored).  ``setup``
    runs once at initialization; strategic resolvers solve there.  Both are
    timed by the engine as resolver compute time.
    """

    name = "resolver"

    def setup(self, lattice: HexLattice, config: TrafficConfiguration,
              fuel_capacity: int) -> None:
        pass

    def command_targets(self, sim: "SimState") -> np.ndarray:
        raise NotImplementedError


@dataclass
class SimState:
    lattice: HexLattice
    config: TrafficConfiguration
    resolver: Resolver
    fuel_capacity: int
    clock: object
    t: int = 0
    resolver_seconds: float = 0.0
    terminated: bool = False
    pos: np.ndarray = field(default=None, repr=False)
    hdg: np.ndarray = field(default=None, repr=False)
    fuel: np.ndarray = field(default=None, repr=False)
    flown: np.ndarray = field(default=None, repr=False)
    status: np.ndarray = field(default=None, repr=False)
    dests: np.ndarray = field(default=None, repr=False)
    prios: np.ndarray = field(default=None, repr=False)
    trajectories: list = field(default_factory=list, repr=False)
    events: list = field(default_factory=list, repr=False)
    history: list = field(default_factory=list, repr=False)

    @property
    def n_aircraft(self) -> int:
        return self.config.n_aircraft

    def any_airborne(self) -> bool:
        return bool((self.status == K.AIRBORNE).any())

    def all_landed(self) -> bool:
        return bool((self.status == K.LANDED).all())

    @property
    def aircraft(self) -> list[AircraftState]:
        out = []
        for i, spec in enumerate(self.config.aircraft):
            out.append(AircraftState(
                id=spec.id,
                priority=spec.priority,
                position=self.lattice.coord_of(int(self.pos[i])),
                heading=heading_from_index(int(self.hdg[i])),
                destination=spec.destination,
                fuel=int(self.fuel[i]),
                distance_flown=int(self.flown[i]),
                status=_STATUS_NAMES[int(self.status[i])],
            ))
        return out

    def collective_state(self) -> tuple:
        """Positions and headings of all airborne aircraft (livelock key)."""
        items = []
        for i, spec in enumerate(self.config.aircraft):
            if self.status[i] == K.AIRBORNE:
                v = self.lattice.coord_of(int(self.pos[i]))
                items.append((spec.id, v.q, v.r, heading_from_index(int(self.hdg[i]))))
        return tuple(sorted(items))


def init_simulation(lat: HexLattice, cfg: TrafficConfiguration, resolver: Resolver,
                    fuel_capacity: int = DEFAULT_FUEL_CAPACITY,
                    clock=time.perf_counter) -> SimState:
    """All aircraft airborne at their starts at t=0 with full fuel.

    The initial heading is the first edge of the canonical shortest path.
    Resolver setup runs here (strategic resolvers solve the full horizon)
    and counts toward resolver compute seconds.
    """
    cfg.validate(lat)
    if fuel_capacity < 1:
        raise ConfigError(f"fuel_capacity must be >= 1, got {fuel_capacity}")
    n = cfg.n_aircraft
    if n > 62:
        raise ConfigError("at most 62 aircraft per scenario")
    sim = SimState(lattice=lat, config=cfg, resolver=resolver,
                   fuel_capacity=fuel_capacity, clock=clock)
    sim.pos = np.array([lat.index_of(a.start) for a in cfg.aircraft], dtype=np.int32)
    sim.dests = np.array([lat.index_of(a.destination) for a in cfg.aircraft], dtype=np.int32)
    sim.prios = np.array([a.priority for a in cfg.aircraft], dtype=np.int32)
    sim.fuel = np.full(n, fuel_capacity, dtype=np.int32)
    sim.flown = np.zeros(n, dtype=np.int32)
    sim.status = np.zeros(n, dtype=np.int8)
    sim.hdg = np.empty(n, dtype=np.int32)
    for i in range(n):
        first = int(K.route_next(lat.nbr, lat.dist, int(sim.pos[i]), int(sim.dests[i])))
        dq = int(lat.coords[first, 0] - lat.coords[sim.pos[i], 0])
        dr = int(lat.coords[first, 1] - lat.coords[sim.pos[i], 1])
        sim.hdg[i] = K.heading_index_of_delta(dq, dr)
    sim.trajectories = [[int(sim.pos[i])] for i in range(n)]
    sim.history = [sim.collective_state()]
    t0 = clock()
    resolver.setup(lat, cfg, fuel_capacity)
    sim.resolver_seconds += clock() - t0
    return sim


def step(sim: SimState) -> list[SeparationEvent]:
    """One simultaneous-commit time step; returns this step's events."""
    if sim.terminated:
        raise SimulationFault("step() on a terminated simulation")
    if not sim.any_airborne():
        raise SimulationFault("step() with no airborne aircraft")
    lat = sim.lattice
    t0 = sim.clock()
    targets = sim.resolver.command_targets(sim)
    sim.resolver_seconds += sim.clock() - t0
    targets = np.asarray(targets, dtype=np.int32)
    if targets.shape != (sim.n_aircraft,):
        raise SimulationFault(
            f"resolver returned {targets.shape}, expected ({sim.n_aircraft},)")
    for i in range(sim.n_aircraft):
        if sim.status[i] != K.AIRBORNE:
            continue
        tv = int(targets[i])
        if tv < 0 or tv >= lat.n_vertices:
            raise SimulationFault(
                f"aircraft {sim.config.aircraft[i].id}: missing or out-of-range "
                f"command at t={sim.t}")
        if tv not in set(int(x) for x in lat.nbr[sim.pos[i]] if x >= 0):
            raise SimulationFault(
                f"aircraft {sim.config.aircraft[i].id}: non-adjacent command "
                f"{lat.coord_of(tv)} from {lat.coord_of(int(sim.pos[i]))} at t={sim.t}")
    was_airborne = sim.status == K.AIRBORNE
    ev_buf = np.empty((sim.n_aircraft, 4), dtype=np.int64)
    nev = int(K.commit_step(lat.coords, sim.dests, sim.pos, sim.hdg, sim.fuel,
                            sim.flown, sim.status, targets, ev_buf))
    new_events = []
    for e in range(nev):
        kind, a, b, mask = (int(ev_buf[e, 0]), int(ev_buf[e, 1]),
                            int(ev_buf[e, 2]), int(ev_buf[e, 3]))
        ids = frozenset(sim.config.aircraft[i].id
                        for i in range(sim.n_aircraft) if (mask >> i) & 1)
        if kind == 0:
            new_events.append(SeparationEvent(sim.t + 1, "vertex",
                                              lat.coord_of(a), ids))
        else:
            new_events.append(SeparationEvent(
                sim.t, "edge", EdgeId.of(lat.coord_of(a), lat.coord_of(b)), ids))
    for i in range(sim.n_aircraft):
        if was_airborne[i]:
            sim.trajectories[i].append(int(sim.pos[i]))
    sim.t += 1
    sim.history.append(sim.collective_state())
    sim.events.extend(new_events)
    return new_events


def run_to_completion(sim: SimState, step_limit: int | None = None) -> ScenarioOutcome:
    """Run until all landed, first loss of separation, fuel emergency,
    allocation failure, or the step limit (a safety net >= fuel capacity)."""
    if step_limit is None:
        step_limit = sim.fuel_capacity
    if step_limit < sim.fuel_capacity:
        raise ValueError("step_limit must be >= fuel_capacity")
    termination = None
    while True:
        if sim.all_landed():
            termination = "all_landed"
            break
        if sim.t >= step_limit:
            termination = "step_limit"
            break
        try:
            events = step(sim)
        except AllocationFailure:
            termination = "allocation_failure"
            break
        if events:
            termination = "loss_of_separation"
            break
        if (sim.status == K.FUEL_OUT).any():
            termination = "fuel_emergency"
            break
    sim.terminated = True
    lat = sim.lattice
    trajectories = tuple(tuple(lat.coord_of(v) for v in traj)
                         for traj in sim.trajectories)
    return ScenarioOutcome(
        config_id=sim.config.config_id,
        algorithm_name=sim.resolver.name,
        termination=termination,
        trajectories=trajectories,
        separation_events=tuple(sim.events),
        steps_elapsed=sim.t,
        resolver_compute_seconds=sim.resolver_seconds,
    )


def detect_livelock(history) -> bool:
    """True iff some collective state recurs (diagnostic; termination in the
    engine uses the fuel criterion)."""
    seen = set()
    for state in history:
        if state in seen:
            return True
        seen.add(state)
    return False


def replay_separation_check(trajectories) -> list[SeparationEvent]:
    """Independent separation checker over coordinate trajectories.

    Pure-Python dict-based re-derivation, separate from the engine's kernel
    monitor.  Trajectories are per-aircraft sequences of AxialCoord; index
    i+1 is aircraft id i+1's path.  An aircraft occupies vertices at times
    0..len-1 and then leaves the airspace.
    """
    events = []
    horizon = max(len(tr) for tr in trajectories)
    for t in range(horizon):
        at_vertex = {}
        for i, tr in enumerate(trajectories):
            if t < len(tr):
                at_vertex.setdefault(tr[t], set()).add(i + 1)
        for v, ids in at_vertex.items():
            if len(ids) >= 2:
                events.append(SeparationEvent(t, "vertex", v, frozenset(ids)))
        on_edge = {}
        for i, tr in enumerate(trajectories):
            if t + 1 < len(tr):
                key = tuple(sorted([(tr[t].q, tr[t].r), (tr[t + 1].q, tr[t + 1].r)]))
                on_edge.setdefault(key, set()).add(i + 1)
        for key, ids in on_edge.items():
            if len(ids) >= 2:
                (aq, ar), (bq, br) = key
                events.append(SeparationEvent(
                    t, "edge", EdgeId.of(AxialCoord(aq, ar), AxialCoord(bq, br)),
                    frozenset(ids)))
    return events
