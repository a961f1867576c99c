"""Engine semantics: simultaneous commit, monitor, fuel, termination."""

import numpy as np
import pytest

from hexsky.hexlattice import AxialCoord, EdgeId, build_lattice
from hexsky.simcore import (
    AircraftSpec,
    ConfigError,
    Resolver,
    SimulationFault,
    TrafficConfiguration,
    detect_livelock,
    init_simulation,
    replay_separation_check,
    run_to_completion,
    step,
)

A = AxialCoord


def cfg_of(pairs, radius=3, config_id=0):
    aircraft = tuple(AircraftSpec(i + 1, s, d, i + 1) for i, (s, d) in enumerate(pairs))
    return TrafficConfiguration(config_id, radius, aircraft)


class ScriptedResolver(Resolver):
    """Follows per-aircraft vertex scripts; repeats the script when exhausted."""

    name = "scripted"

    def __init__(self, paths):
        self.paths = paths  # per aircraft: list of AxialCoord after the start
        self.k = 0

    def command_targets(self, sim):
        out = np.full(sim.n_aircraft, -1, dtype=np.int32)
        for i, path in enumerate(self.paths):
            if sim.status[i] == 0:
                out[i] = sim.lattice.index_of(path[self.k % len(path)])
        self.k += 1
        return out


class GreedyResolver(Resolver):
    """Always the next canonical shortest-path vertex (no avoidance)."""

    name = "greedy"

    def command_targets(self, sim):
        from hexsky import _kernels as K
        out = np.full(sim.n_aircraft, -1, dtype=np.int32)
        for i in range(sim.n_aircraft):
            if sim.status[i] == 0:
                out[i] = K.route_next(sim.lattice.nbr, sim.lattice.dist,
                                      int(sim.pos[i]), int(sim.dests[i]))
        return out


@pytest.fixture(scope="module")
def lat3():
    return build_lattice(3)


# --- init ------------------------------------------------------------------

def test_init_full_fuel_airborne(lat3):
    cfg = cfg_of([(A(-2, 0), A(2, 0))])
    sim = init_simulation(lat3, cfg, GreedyResolver(), fuel_capacity=20)
    ac = sim.aircraft[0]
    assert ac.status == "airborne"
    assert ac.fuel == 20
    assert ac.position == A(-2, 0)
    assert ac.heading == 90  # first planned edge heads due east


def test_init_rejects_shared_start(lat3):
    cfg = cfg_of([(A(0, 0), A(3, 0)), (A(0, 0), A(-3, 0))])
    with pytest.raises(ConfigError):
        init_simulation(lat3, cfg, GreedyResolver())


def test_init_rejects_zero_fuel(lat3):
    cfg = cfg_of([(A(-2, 0), A(2, 0))])
    with pytest.raises(ConfigError):
        init_simulation(lat3, cfg, GreedyResolver(), fuel_capacity=0)


def test_init_rejects_start_equal_destination(lat3):
    cfg = cfg_of([(A(1, 0), A(1, 0))])
    with pytest.raises(ConfigError):
        init_simulation(lat3, cfg, GreedyResolver())


def test_init_rejects_bad_priorities(lat3):
    aircraft = (AircraftSpec(1, A(0, 0), A(3, 0), 1),
                AircraftSpec(2, A(-1, 0), A(-3, 0), 1))
    with pytest.raises(ConfigError):
        init_simulation(lat3, TrafficConfiguration(0, 3, aircraft), GreedyResolver())


# --- step ------------------------------------------------------------------

def test_converging_commands_raise_one_vertex_event(lat3):
    cfg = cfg_of([(A(-1, 0), A(3, 0)), (A(1, 0), A(-3, 0))])
    res = ScriptedResolver([[A(0, 0)], [A(0, 0)]])
    sim = init_simulation(lat3, cfg, res)
    events = step(sim)
    assert len(events) == 1
    assert events[0].kind == "vertex"
    assert events[0].resource == A(0, 0)
    assert events[0].aircraft_ids == frozenset({1, 2})
    assert events[0].time == 1


def test_edge_swap_raises_one_edge_event(lat3):
    cfg = cfg_of([(A(0, 0), A(3, 0)), (A(1, 0), A(-3, 0))])
    res = ScriptedResolver([[A(1, 0)], [A(0, 0)]])
    sim = init_simulation(lat3, cfg, res)
    events = step(sim)
    assert len(events) == 1
    assert events[0].kind == "edge"
    assert events[0].resource == EdgeId.of(A(0, 0), A(1, 0))
    assert events[0].aircraft_ids == frozenset({1, 2})


def test_landing_removes_aircraft_without_event(lat3):
    cfg = cfg_of([(A(2, 0), A(3, 0))])
    sim = init_simulation(lat3, cfg, GreedyResolver())
    events = step(sim)
    assert events == []
    assert sim.aircraft[0].status == "landed"
    assert sim.aircraft[0].position == A(3, 0)


def test_fuel_accounting_invariant(lat3):
    cfg = cfg_of([(A(-3, 0), A(3, 0))])
    sim = init_simulation(lat3, cfg, GreedyResolver(), fuel_capacity=20)
    for _ in range(4):
        step(sim)
        ac = sim.aircraft[0]
        assert ac.fuel == 20 - ac.distance_flown


def test_non_adjacent_command_is_a_fault_not_los(lat3):
    cfg = cfg_of([(A(0, 0), A(3, 0))])
    sim = init_simulation(lat3, cfg, ScriptedResolver([[A(2, 0)]]))
    with pytest.raises(SimulationFault):
        step(sim)


def test_simultaneous_commit_is_order_independent(lat3):
    # same physical scenario with the aircraft list permuted: identical events
    pairs = [(A(-1, 0), A(3, 0)), (A(1, 0), A(-3, 0)), (A(0, -2), A(0, 2))]
    routes = {A(-1, 0): A(0, 0), A(1, 0): A(0, 0), A(0, -2): A(0, -1)}
    outcomes = []
    for perm in ((0, 1, 2), (2, 1, 0), (1, 0, 2)):
        ppairs = [pairs[i] for i in perm]
        cfg = cfg_of(ppairs)
        res = ScriptedResolver([[routes[s]] for s, _ in ppairs])
        sim = init_simulation(lat3, cfg, res)
        events = step(sim)
        outcomes.append({(e.kind, e.resource) for e in events})
    assert outcomes[0] == outcomes[1] == outcomes[2]


# --- run_to_completion -----------------------------------------------------

def test_unimpeded_flight_lands_in_shortest_time(lat3):
    cfg = cfg_of([(A(-2, 0), A(3, 0))])
    sim = init_simulation(lat3, cfg, GreedyResolver(), fuel_capacity=20)
    out = run_to_completion(sim)
    assert out.termination == "all_landed"
    assert out.steps_elapsed == 5
    assert out.trajectories[0][0] == A(-2, 0)
    assert out.trajectories[0][-1] == A(3, 0)
    assert len(out.trajectories[0]) == 6
    assert out.separation_events == ()


def test_forced_cycle_ends_in_fuel_emergency_at_capacity(lat3):
    # ping-pong forever between (0,0) and (1,0): never reaches (3,0)
    cfg = cfg_of([(A(0, 0), A(3, 0))])
    res = ScriptedResolver([[A(1, 0), A(0, 0)]])
    sim = init_simulation(lat3, cfg, res, fuel_capacity=20)
    out = run_to_completion(sim)
    assert out.termination == "fuel_emergency"
    assert out.steps_elapsed == 20
    assert detect_livelock(sim.history)


def test_los_terminates_immediately(lat3):
    cfg = cfg_of([(A(-1, 0), A(3, 0)), (A(1, 0), A(-3, 0))])
    res = ScriptedResolver([[A(0, 0)], [A(0, 0)]])
    sim = init_simulation(lat3, cfg, res)
    out = run_to_completion(sim)
    assert out.termination == "loss_of_separation"
    assert out.steps_elapsed == 1
    assert len(out.separation_events) == 1


def test_determinism_identical_outcomes(lat3):
    cfg = cfg_of([(A(-2, 0), A(2, 0)), (A(2, 0), A(-2, 0))])
    runs = []
    for _ in range(2):
        sim = init_simulation(lat3, cfg, GreedyResolver(), clock=lambda: 0.0)
        runs.append(run_to_completion(sim))
    assert runs[0] == runs[1]


def test_compute_seconds_cover_resolver_intervals_only(lat3):
    # scripted clock: every call returns the next value, so each timed
    # resolver interval contributes exactly 1.0 while anything the engine
    # does between resolver calls contributes nothing
    ticks = iter(range(1000))
    clock = lambda: float(next(ticks))
    cfg = cfg_of([(A(-2, 0), A(2, 0))])
    sim = init_simulation(lat3, cfg, GreedyResolver(), fuel_capacity=20,
                          clock=clock)
    out = run_to_completion(sim)
    # one setup interval + one interval per step, 1.0 each
    assert out.resolver_compute_seconds == out.steps_elapsed + 1


# --- detect_livelock -------------------------------------------------------

def test_detect_livelock_on_repeat_and_not_on_progress():
    assert detect_livelock([("a",), ("b",), ("a",)])
    assert not detect_livelock([("a",), ("b",), ("c",)])


# --- independent replay checker ---------------------------------------------

def test_replay_checker_matches_engine_verdicts(lat3):
    # clean run: no events either way
    cfg = cfg_of([(A(-2, 0), A(3, 0))])
    sim = init_simulation(lat3, cfg, GreedyResolver())
    out = run_to_completion(sim)
    assert replay_separation_check(out.trajectories) == []
    # vertex LoS reproduces in the replay
    cfg = cfg_of([(A(-1, 0), A(3, 0)), (A(1, 0), A(-3, 0))])
    sim = init_simulation(lat3, cfg, ScriptedResolver([[A(0, 0)], [A(0, 0)]]))
    out = run_to_completion(sim)
    replay = replay_separation_check(out.trajectories)
    assert len(replay) == 1
    assert replay[0].kind == "vertex"
    assert replay[0].aircraft_ids == frozenset({1, 2})
    # edge swap reproduces in the replay
    cfg = cfg_of([(A(0, 0), A(3, 0)), (A(1, 0), A(-3, 0))])
    sim = init_simulation(lat3, cfg, ScriptedResolver([[A(1, 0)], [A(0, 0)]]))
    out = run_to_completion(sim)
    replay = replay_separation_check(out.trajectories)
    assert {e.kind for e in replay} == {"edge"}
