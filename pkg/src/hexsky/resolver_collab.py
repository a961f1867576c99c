"""Collaborative airspace allocation: per-step all-hands negotiation.

Every time step all airborne aircraft claim next-step resources (one vertex
plus the edge reaching it), resolve clashes by the agreed global priorities,
and come away with conflict-free turn-or-continue commitments.  The round is
a pure function of the shared state, so running it centrally or replicated
per aircraft gives identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .hexlattice import AxialCoord, EdgeId, HexLattice, heading_index
from .simcore import (
    AircraftState,
    AllocationFailure,
    MoveCommand,
    Resolver,
    SimState,
)

# at most 6N rounds: every clash advances at least one claimant's pointer
MAX_ROUND_FACTOR = 6


@dataclass(frozen=True)
class Claim:
    aircraft_id: int
    edge: EdgeId
    target_vertex: AxialCoord
    preference_rank: int


Allocation = dict  # aircraft_id -> Claim


def preference_list(a: AircraftState, lat: HexLattice,
                    landed_free=None) -> list[Claim]:
    """Candidate claims for one aircraft, best first.

    Sort keys: distance from target to destination, turn magnitude, right
    turn before left at equal magnitude, canonical neighbor order.
    ``landed_free`` optionally filters claimable vertices; vertices of
    landed aircraft are free by default.
    """
    if a.status != "airborne":
        raise ValueError("aircraft must be airborne")
    cur = lat.index_of(a.position)
    dst = lat.index_of(a.destination)
    row = np.empty(6, dtype=np.int32)
    m = int(K.preference_order(lat.nbr, lat.dist, lat.coords, cur, dst,
                               heading_index(a.heading), row))
    claims = []
    rank = 0
    for x in range(m):
        target = lat.coord_of(int(row[x]))
        if landed_free is not None and not landed_free(target):
            continue
        claims.append(Claim(a.id, EdgeId.of(a.position, target), target, rank))
        rank += 1
    return claims


def negotiation_round(aircraft: list[AircraftState], lat: HexLattice) -> Allocation:
    """Iterative all-hands round: claim, clash, yield by priority, repeat.

    The result is invariant under permutation of the aircraft list; the
    highest-priority aircraft always holds its rank-0 claim.
    """
    if not aircraft:
        return {}
    if any(a.status != "airborne" for a in aircraft):
        raise ValueError("all negotiating aircraft must be airborne")
    if len({a.priority for a in aircraft}) != len(aircraft):
        raise ValueError("priorities must be unique")
    n = len(aircraft)
    pos = np.array([lat.index_of(a.position) for a in aircraft], dtype=np.int32)
    hdg = np.array([heading_index(a.heading) for a in aircraft], dtype=np.int32)
    dests = np.array([lat.index_of(a.destination) for a in aircraft], dtype=np.int32)
    prios = np.array([a.priority for a in aircraft], dtype=np.int32)
    active = np.ones(n, dtype=np.uint8)
    targets = np.empty(n, dtype=np.int32)
    ranks = np.empty(n, dtype=np.int32)
    status, iters = K.collab_round(lat.nbr, lat.dist, lat.coords, pos, hdg,
                                   dests, prios, active, targets, ranks)
    if status == 1:
        raise AllocationFailure("an aircraft exhausted all candidate claims")
    if status == 2 or iters > MAX_ROUND_FACTOR * n:
        raise RuntimeError(f"negotiation exceeded {MAX_ROUND_FACTOR}N iterations")
    allocation: Allocation = {}
    for i, a in enumerate(aircraft):
        target = lat.coord_of(int(targets[i]))
        allocation[a.id] = Claim(a.id, EdgeId.of(a.position, target), target,
                                 int(ranks[i]))
    return allocation


def resolve_collaborative(all_states: list[AircraftState],
                          lat: HexLattice) -> list[MoveCommand]:
    """One negotiation round converted to move commands for the airborne."""
    airborne = [a for a in all_states if a.status == "airborne"]
    allocation = negotiation_round(airborne, lat)
    return [MoveCommand(a.id, allocation[a.id].target_vertex) for a in airborne]


class CollaborativeResolver(Resolver):
    name = "collaborative"

    def command_targets(self, sim: SimState) -> np.ndarray:
        lat = sim.lattice
        active = (sim.status == K.AIRBORNE).astype(np.uint8)
        targets = np.empty(sim.n_aircraft, dtype=np.int32)
        ranks = np.empty(sim.n_aircraft, dtype=np.int32)
        status, iters = K.collab_round(lat.nbr, lat.dist, lat.coords, sim.pos,
                                       sim.hdg, sim.dests, sim.prios, active,
                                       targets, ranks)
        if status == 1:
            raise AllocationFailure(
                f"config {sim.config.config_id}: claim exhaustion at t={sim.t}")
        if status == 2:
            raise RuntimeError("negotiation exceeded its iteration bound")
        return targets
