"""Detect-and-avoid resolution via right-of-way rules.

Each aircraft independently projects itself two steps along its intended
route and every intruder two steps straight along its current heading (no
data exchange, so the intruder's own avoidance is not modeled), classifies
any disputed vertex or edge by conflict angle, and maneuvers per the rule
table.  Pairs are always kept separated; with three or more aircraft a
fixed-priority candidate sweep is used, which is deliberately not foolproof.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .hexlattice import AxialCoord, EdgeId, HexLattice, heading_index
from .simcore import AircraftState, MoveCommand, Resolver, SimState

C1_60 = "C1_60"
C2_120 = "C2_120"
C3_1_HEADON_VERTEX = "C3_1_headon_vertex"
C3_2_HEADON_EDGE = "C3_2_headon_edge"
C4_240 = "C4_240"
C5_300 = "C5_300"

TURN_RIGHT = "TurnRight"
CONTINUE = "Continue"

_VERTEX_CASES = {1: C1_60, 2: C2_120, 3: C3_1_HEADON_VERTEX, 4: C4_240, 5: C5_300}

_CASE_STEPS = {C1_60: 1, C2_120: 2, C3_1_HEADON_VERTEX: 3,
               C3_2_HEADON_EDGE: 3, C4_240: 4, C5_300: 5}


@dataclass(frozen=True)
class PredictedConflict:
    intruder_id: int
    case: str
    time_offset: int  # 1 or 2
    resource: object  # AxialCoord or EdgeId

    @property
    def angle(self) -> int:
        return _CASE_STEPS[self.case] * 60


def _marshal(states: list[AircraftState], lat: HexLattice):
    n = len(states)
    pos = np.empty(n, dtype=np.int32)
    hdg = np.empty(n, dtype=np.int32)
    dests = np.empty(n, dtype=np.int32)
    prios = np.empty(n, dtype=np.int32)
    active = np.empty(n, dtype=np.uint8)
    for i, s in enumerate(states):
        pos[i] = lat.index_of(s.position)
        hdg[i] = heading_index(s.heading)
        dests[i] = lat.index_of(s.destination)
        prios[i] = s.priority
        active[i] = 1 if s.status == "airborne" else 0
    return pos, hdg, dests, prios, active


def predict_conflicts(own: AircraftState, others: list[AircraftState],
                      lat: HexLattice) -> list[PredictedConflict]:
    """Two-step lookahead conflicts along own's shortest-path intent."""
    if own.status != "airborne":
        raise ValueError("ownship must be airborne")
    states = [own] + list(others)
    pos, hdg, dests, prios, active = _marshal(states, lat)
    n = len(states)
    p1 = int(K.route_next(lat.nbr, lat.dist, int(pos[0]), int(dests[0])))
    p2 = int(K.route_next(lat.nbr, lat.dist, p1, int(dests[0])))
    found = np.zeros(n, dtype=np.uint8)
    off = np.zeros(n, dtype=np.int32)
    isedge = np.zeros(n, dtype=np.uint8)
    steps = np.zeros(n, dtype=np.int32)
    ra = np.zeros(n, dtype=np.int32)
    rb = np.zeros(n, dtype=np.int32)
    K.scan_conflicts(lat.dir_nbr, lat.coords, pos, hdg, prios, active, 0,
                     p1, p2, found, off, isedge, steps, ra, rb)
    out = []
    for j in range(1, n):
        if not found[j]:
            continue
        if isedge[j]:
            case = C3_2_HEADON_EDGE
            resource = EdgeId.of(lat.coord_of(int(ra[j])), lat.coord_of(int(rb[j])))
        else:
            case = _VERTEX_CASES[int(steps[j])]
            resource = lat.coord_of(int(ra[j]))
        out.append(PredictedConflict(states[j].id, case, int(off[j]), resource))
    return out


def pairwise_rule(case: str, own_heading: int) -> str:
    """60/120: turn right; 180: turn right iff heading south-hemisphere or
    due west; 240/300: continue."""
    if case not in _CASE_STEPS:
        raise ValueError(f"unknown conflict case: {case}")
    turns = K.rule_turns_right(_CASE_STEPS[case], heading_index(own_heading))
    return TURN_RIGHT if turns else CONTINUE


def resolve_implicit(own: AircraftState, all_states: list[AircraftState],
                     lat: HexLattice) -> MoveCommand:
    """Pure function of the current states; always returns an adjacent move."""
    if own.status != "airborne":
        raise ValueError("ownship must be airborne")
    states = list(all_states)
    own_idx = next(i for i, s in enumerate(states) if s.id == own.id)
    pos, hdg, dests, prios, active = _marshal(states, lat)
    target = int(K.implicit_command(lat.nbr, lat.dir_nbr, lat.dist, lat.coords,
                                    pos, hdg, dests, prios, active, own_idx))
    return MoveCommand(own.id, lat.coord_of(target))


class ImplicitResolver(Resolver):
    name = "implicit"

    def command_targets(self, sim: SimState) -> np.ndarray:
        lat = sim.lattice
        active = (sim.status == K.AIRBORNE).astype(np.uint8)
        out = np.empty(sim.n_aircraft, dtype=np.int32)
        K.implicit_commands(lat.nbr, lat.dir_nbr, lat.dist, lat.coords,
                            sim.pos, sim.hdg, sim.dests, sim.prios, active, out)
        return out
