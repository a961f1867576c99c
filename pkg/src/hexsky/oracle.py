"""Reference brute-force joint-plan enumerator.

Depth-first enumeration of all joint moves with admissible cost bounding,
written over coordinate objects and the lattice adjacency dictionary only.
It shares no code path with the fast solver (which searches packed integer
states best-first), so the two provide genuinely independent answers for
the optimality verification suite.
"""

from __future__ import annotations

import itertools

from .hexlattice import AxialCoord, HexLattice, hex_distance


def joint_enumeration_optimum(lat: HexLattice, starts, dests, horizon: int):
    """Minimum sum of arrival times over every feasible joint plan.

    Aircraft all move one edge per step, land on reaching their destination
    (absorbing), may not share a vertex at any time nor an undirected edge
    within a step, and must all arrive by ``horizon``.  Returns the optimal
    total or None when no plan fits the horizon.
    """
    n = len(starts)
    best: list = [None]

    def rec(positions, t, cost):
        airborne = [i for i in range(n) if positions[i] is not None]
        if not airborne:
            if best[0] is None or cost < best[0]:
                best[0] = cost
            return
        bound = cost + sum(hex_distance(positions[i], dests[i]) for i in airborne)
        if best[0] is not None and bound >= best[0]:
            return
        if t == horizon:
            return
        options = []
        for i in airborne:
            moves = [w for w in lat.neighbors(positions[i])
                     if t + 1 + hex_distance(w, dests[i]) <= horizon]
            if not moves:
                return
            moves.sort(key=lambda w: (hex_distance(w, dests[i]), w.q, w.r))
            options.append(moves)
        step_cost = len(airborne)
        for combo in itertools.product(*options):
            if len(set(combo)) != len(combo):
                continue
            swap = False
            for x in range(len(airborne)):
                for y in range(x + 1, len(airborne)):
                    ix, iy = airborne[x], airborne[y]
                    if combo[x] == positions[iy] and combo[y] == positions[ix]:
                        swap = True
                        break
                if swap:
                    break
            if swap:
                continue
            nxt = list(positions)
            for x, i in enumerate(airborne):
                nxt[i] = None if combo[x] == dests[i] else combo[x]
            rec(tuple(nxt), t + 1, cost + step_cost)

    rec(tuple(starts), 0, 0)
    return best[0]
