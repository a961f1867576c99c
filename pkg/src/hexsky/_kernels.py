"""Hot integer kernels shared by the lattice, resolvers, engine and solver.

Every function here is written in nopython-compatible style (plain loops over
numpy arrays) and compiled with numba's ``@njit`` by default.  Setting the
environment variable ``HEXSKY_NO_NUMBA=1`` before import selects the pure
numpy/Python fallback lane: the exact same source runs uninterpreted, so the
two lanes cannot diverge.  ``benchmarks/kernel_bench.py`` compares them.

Conventions used throughout:

* Vertices are int32 indices into the lattice's canonical vertex order.
* ``nbr[v, c]`` is the neighbor of ``v`` at canonical offset slot ``c``
  (offsets (1,0),(0,1),(-1,1),(-1,0),(0,-1),(1,-1)), or -1 off-lattice.
* ``dir_nbr[v, h]`` is the neighbor of ``v`` in compass direction
  ``30 + 60*h`` degrees, or -1.  Heading indices h=0..5 map to compass
  30,90,150,210,270,330 (0 = north, clockwise positive).
* Aircraft status codes: 0 airborne, 1 landed, 2 fuel emergency, 3 collided.
"""

import os

import numpy as np

_FLAG = os.environ.get("HEXSKY_NO_NUMBA", "").strip().lower()
USING_NUMBA = False
if _FLAG not in {"1", "true", "yes", "on"}:
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:  # fallback lane
        pass


def maybe_jit(fn):
    if USING_NUMBA:
        return njit(cache=True)(fn)
    return fn


# dq, dr per heading index (compass 30, 90, 150, 210, 270, 330)
HEADING_DQ = np.array([0, 1, 1, 0, -1, -1], dtype=np.int32)
HEADING_DR = np.array([1, 0, -1, -1, 0, 1], dtype=np.int32)

# candidate maneuvers for the multi-intruder sweep, as clockwise 60-degree
# steps relative to the current heading; 9 marks "the pairwise-rule maneuver"
# order: rule, right 60, right 120, straight, left 60, left 120, reverse
CAND_STEPS = np.array([9, 1, 2, 0, 5, 4, 3], dtype=np.int32)

# deflection order when a planned route turn is hazardous: straight first
# (stay predictable), then right 60/120, left 60/120, reverse
AVOID_STEPS = np.array([0, 1, 2, 5, 4, 3], dtype=np.int32)

AIRBORNE = 0
LANDED = 1
FUEL_OUT = 2
COLLIDED = 3

# fused-run termination codes, aligned with simcore.TERMINATIONS
TERM_ALL_LANDED = 0
TERM_LOS = 1
TERM_FUEL = 2
TERM_ALLOC_FAIL = 3
TERM_STEP_LIMIT = 4


@maybe_jit
def heading_index_of_delta(dq, dr):
    for h in range(6):
        if HEADING_DQ[h] == dq and HEADING_DR[h] == dr:
            return h
    return -1


@maybe_jit
def rule_turns_right(angle_steps, own_hidx):
    """Right-of-way rule table over conflict angle steps (angle = 60*steps).

    60 and 120 degrees: turn right.  180: turn right only when heading into
    the south hemisphere or due west (compass 150/210/270 = hidx 2/3/4).
    240 and 300: hold course.
    """
    if angle_steps == 1 or angle_steps == 2:
        return True
    if angle_steps == 3:
        return own_hidx == 2 or own_hidx == 3 or own_hidx == 4
    return False


@maybe_jit
def bfs_distances(nbr, src):
    nv = nbr.shape[0]
    dist = np.full(nv, -1, dtype=np.int32)
    queue = np.empty(nv, dtype=np.int32)
    head = 0
    tail = 0
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for c in range(6):
            w = nbr[u, c]
            if w >= 0 and dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = w
                tail += 1
    return dist


@maybe_jit
def all_pairs_distances(nbr):
    nv = nbr.shape[0]
    out = np.empty((nv, nv), dtype=np.int32)
    for s in range(nv):
        out[s, :] = bfs_distances(nbr, s)
    return out


@maybe_jit
def route_next(nbr, dist, v, dst):
    """First canonical-order neighbor that reduces distance to dst; -1 at dst."""
    if v == dst:
        return -1
    dv = dist[v, dst]
    for c in range(6):
        w = nbr[v, c]
        if w >= 0 and dist[w, dst] == dv - 1:
            return w
    return -1


@maybe_jit
def scan_conflicts(dir_nbr, coords, pos, hdg, prios, active, own, p1, p2,
                   out_found, out_offset, out_isedge, out_steps, out_ra, out_rb):
    """Earliest 2-step conflict per intruder against own path cur -> p1 -> p2.

    Intruders are projected straight along their current heading; own follows
    the given two-vertex intent (p2 may be -1 when own lands at p1).  Writes
    one record per intruder and returns (count of conflicting intruders,
    index of the conflicting intruder with the smallest priority value).
    """
    n = pos.shape[0]
    cur = pos[own]
    mh1 = heading_index_of_delta(coords[p1, 0] - coords[cur, 0],
                                 coords[p1, 1] - coords[cur, 1])
    mh2 = -1
    if p2 >= 0:
        mh2 = heading_index_of_delta(coords[p2, 0] - coords[p1, 0],
                                     coords[p2, 1] - coords[p1, 1])
    count = 0
    top = -1
    top_prio = 1 << 30
    for j in range(n):
        out_found[j] = 0
        if j == own or active[j] == 0:
            continue
        i0 = pos[j]
        hj = hdg[j]
        i1 = dir_nbr[i0, hj]
        i2 = -1
        if i1 >= 0:
            i2 = dir_nbr[i1, hj]
        off = 0
        isedge = 0
        steps = 0
        ra = -1
        rb = -1
        if i1 >= 0 and p1 == i1:
            off = 1
            steps = (hj - mh1) % 6
            ra = p1
        elif i1 >= 0 and p1 == i0 and i1 == cur:
            off = 1
            isedge = 1
            steps = (hj - mh1) % 6
            ra = cur
            rb = p1
        elif p2 >= 0 and i2 >= 0 and p2 == i2:
            off = 2
            steps = (hj - mh2) % 6
            ra = p2
        elif p2 >= 0 and i2 >= 0 and p1 == i2 and p2 == i1:
            off = 2
            isedge = 1
            steps = (hj - mh2) % 6
            ra = p1
            rb = p2
        if off == 0 or steps == 0:
            # steps == 0 is a same-heading continuation of an earlier-step
            # conflict; it cannot be the earliest conflict with an intruder
            continue
        out_found[j] = 1
        out_offset[j] = off
        out_isedge[j] = isedge
        out_steps[j] = steps
        out_ra[j] = ra
        out_rb[j] = rb
        count += 1
        if prios[j] < top_prio:
            top_prio = prios[j]
            top = j
    return count, top


@maybe_jit
def turn_right_target(dir_nbr, cur, h):
    """First existing neighbor rotating clockwise from the current heading.

    +1..+3 covers every reachable vertex mid-flight (the reverse of the
    arrival edge always exists); at t=0 the heading is the planned outgoing
    edge whose reverse can be off-lattice at corner vertices, so escalation
    continues to +5 (degree >= 3 guarantees a hit).
    """
    for k in range(1, 6):
        t = dir_nbr[cur, (h + k) % 6]
        if t >= 0:
            return t
    return dir_nbr[cur, h]


@maybe_jit
def turn_is_clear(dir_nbr, dist, pos, hdg, prios, active, own, cur, v, solo):
    """First-tier check for a deviating turn.

    Toward a higher-priority intruder the turn must keep graph distance >= 2
    (its next move is unobservable, and two aircraft eyeing the same
    in-between vertex must both hold off).  In a single-intruder encounter
    (``solo``) the fixed global priorities break the symmetry: toward
    lower-priority traffic only observable hazards block the turn, so a pair
    can never deadlock into a mutual deference orbit.  With more traffic
    around, the non-exhaustive logic keeps the conservative mutual rule for
    everyone, which resolves most encounters but can orbit forever (the
    livelocks the fuel criterion exists for)."""
    for j in range(pos.shape[0]):
        if j == own or active[j] == 0:
            continue
        if prios[j] < prios[own] or not solo:
            # multi-traffic deference is one ring wider: simpler and safer
            # for crowds, at the price of orbit livelocks near contested
            # destinations
            lim = 2 if solo else 3
            if dist[v, pos[j]] < lim:
                return False
        else:
            sj = dir_nbr[pos[j], hdg[j]]
            if sj < 0:
                # boundary: the intruder is forced into an unobservable turn
                if dist[v, pos[j]] < 2:
                    return False
            elif v == pos[j]:
                if sj == cur:
                    return False
            elif dist[v, pos[j]] == 1 and sj == v:
                return False
    return True


@maybe_jit
def turn_is_plausible(dir_nbr, dist, pos, hdg, active, own, cur, v):
    """Second-tier turn check for cornered aircraft: no intruder's
    observable straight continuation enters the target, and moving into an
    intruder's vertex is allowed only when that intruder is not heading
    straight into ours (it always vacates, and its own turns toward us are
    blocked by the first-tier rule)."""
    for j in range(pos.shape[0]):
        if j == own or active[j] == 0:
            continue
        sj = dir_nbr[pos[j], hdg[j]]
        if sj < 0:
            # boundary: the intruder is forced into an unobservable turn
            if dist[v, pos[j]] < 2:
                return False
        elif v == pos[j]:
            if sj == cur:
                return False
        elif dist[v, pos[j]] == 1:
            if sj == v:
                return False
    return True


@maybe_jit
def implicit_command(nbr, dir_nbr, dist, coords, pos, hdg, dests, prios, active, own):
    """Next vertex for ``own`` under the detect-and-avoid rules.

    Conflicts are predicted along the planned route against straight-line
    intruder projections.  The right-of-way table is applied unconditionally
    only when the conflicting first move lies on the ownship's own straight
    track (the geometry is then mutual and the table maneuvers are
    complementary).  A route turn that creates a conflict, or that would
    come within distance 2 of an intruder whose next move is unobservable,
    is deflected: stay on the straight track when it is clear, else take the
    first clear clockwise alternative.  With two or more conflicting
    intruders the fixed candidate order [rule maneuver, right 60, right 120,
    straight, left 60, left 120, reverse] is swept and the first maneuver
    clearing every predicted conflict wins, falling back to the rule
    maneuver for the highest-priority intruder (not foolproof).
    """
    n = pos.shape[0]
    cur = pos[own]
    dst = dests[own]
    h = hdg[own]
    p1 = route_next(nbr, dist, cur, dst)
    p2 = route_next(nbr, dist, p1, dst)
    straight = dir_nbr[cur, h]
    nair = 0
    for j in range(n):
        if j != own and active[j] != 0:
            nair += 1
    solo = nair == 1
    found = np.zeros(n, dtype=np.uint8)
    off = np.zeros(n, dtype=np.int32)
    isedge = np.zeros(n, dtype=np.uint8)
    steps = np.zeros(n, dtype=np.int32)
    ra = np.zeros(n, dtype=np.int32)
    rb = np.zeros(n, dtype=np.int32)
    cnt, top = scan_conflicts(dir_nbr, coords, pos, hdg, prios, active, own,
                              p1, p2, found, off, isedge, steps, ra, rb)
    if cnt >= 2:
        if rule_turns_right(steps[top], h):
            rule_target = turn_right_target(dir_nbr, cur, h)
        else:
            rule_target = p1
        tried = np.empty(7, dtype=np.int32)
        ntried = 0
        for ci in range(7):
            s = CAND_STEPS[ci]
            if s == 9:
                tgt = rule_target
            else:
                tgt = dir_nbr[cur, (h + s) % 6]
            if tgt < 0:
                continue
            dup = False
            for x in range(ntried):
                if tried[x] == tgt:
                    dup = True
                    break
            if dup:
                continue
            tried[ntried] = tgt
            ntried += 1
            q2 = route_next(nbr, dist, tgt, dst)
            c2, _ = scan_conflicts(dir_nbr, coords, pos, hdg, prios, active,
                                   own, tgt, q2, found, off, isedge, steps,
                                   ra, rb)
            if c2 == 0:
                return tgt
        return rule_target
    if cnt == 1 and p1 == straight:
        # mutual track geometry: the table coordinates the pair
        if rule_turns_right(steps[top], h):
            return turn_right_target(dir_nbr, cur, h)
        return p1
    if cnt == 0:
        if p1 == straight:
            return p1
        if turn_is_clear(dir_nbr, dist, pos, hdg, prios, active, own, cur,
                         p1, solo):
            return p1
    # the planned turn is hazardous: tier 1 prefers the straight track and
    # turns that keep distance 2; tier 2 (cornered) accepts moves no
    # observable intruder continuation reaches; last resort ignores the
    # prediction but never steps into an observable hazard
    for tier in range(3):
        for s in range(6):
            if s == 0:
                tgt = straight
            else:
                tgt = dir_nbr[cur, (h + AVOID_STEPS[s]) % 6]
            if tgt < 0:
                continue
            if s > 0 or tier > 0:
                if tier == 0:
                    if not turn_is_clear(dir_nbr, dist, pos, hdg, prios, active,
                                         own, cur, tgt, solo):
                        continue
                elif not turn_is_plausible(dir_nbr, dist, pos, hdg, active,
                                           own, cur, tgt):
                    continue
            if tier == 2:
                return tgt
            q2 = route_next(nbr, dist, tgt, dst)
            c2, _ = scan_conflicts(dir_nbr, coords, pos, hdg, prios, active,
                                   own, tgt, q2, found, off, isedge, steps,
                                   ra, rb)
            if c2 == 0:
                return tgt
    return p1


@maybe_jit
def implicit_commands(nbr, dir_nbr, dist, coords, pos, hdg, dests, prios, active, out):
    for i in range(pos.shape[0]):
        if active[i] != 0:
            out[i] = implicit_command(nbr, dir_nbr, dist, coords, pos, hdg,
                                      dests, prios, active, i)
        else:
            out[i] = -1


@maybe_jit
def preference_order(nbr, dist, coords, cur, dst, h, out_targets):
    """Outgoing moves ordered by (distance-to-go, turn magnitude, right-
    before-left, canonical slot).  Returns the candidate count."""
    m = 0
    keys = np.empty(6, dtype=np.int64)
    for c in range(6):
        w = nbr[cur, c]
        if w < 0:
            continue
        wh = heading_index_of_delta(coords[w, 0] - coords[cur, 0],
                                    coords[w, 1] - coords[cur, 1])
        d = (wh - h) % 6
        if d <= 3:
            mag = d
        else:
            mag = 6 - d
        left = 0
        if d >= 4:
            left = 1
        key = ((np.int64(dist[w, dst]) * 4 + mag) * 2 + left) * 6 + c
        j = m
        while j > 0 and keys[j - 1] > key:
            keys[j] = keys[j - 1]
            out_targets[j] = out_targets[j - 1]
            j -= 1
        keys[j] = key
        out_targets[j] = w
        m += 1
    return m


@maybe_jit
def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@maybe_jit
def collab_round(nbr, dist, coords, pos, hdg, dests, prios, active,
                 out_targets, out_ranks):
    """One all-hands negotiation round.

    Iteratively: everyone claims its lowest unexhausted preference; claims
    clash when they share a target vertex or the same undirected edge; in
    each clash group everyone but the highest-priority member exhausts that
    rank.  Returns (status, iterations): status 0 ok, 1 a claimant ran out
    of candidates (allocation failure), 2 the 6N iteration bound was
    exceeded (protocol invariant violation).
    """
    n = pos.shape[0]
    pref = np.full((n, 6), -1, dtype=np.int32)
    plen = np.zeros(n, dtype=np.int32)
    row = np.empty(6, dtype=np.int32)
    for i in range(n):
        out_targets[i] = -1
        out_ranks[i] = -1
        if active[i] == 0:
            continue
        m = preference_order(nbr, dist, coords, pos[i], dests[i], hdg[i], row)
        for x in range(m):
            pref[i, x] = row[x]
        plen[i] = m
    ptr = np.zeros(n, dtype=np.int32)
    parent = np.empty(n, dtype=np.int32)
    best_prio = np.empty(n, dtype=np.int32)
    best_idx = np.empty(n, dtype=np.int32)
    gsize = np.empty(n, dtype=np.int32)
    iters = 0
    max_iters = 6 * n + 1
    while True:
        iters += 1
        if iters > max_iters:
            return 2, iters
        for i in range(n):
            parent[i] = i
        clash = False
        for i in range(n):
            if active[i] == 0:
                continue
            ti = pref[i, ptr[i]]
            for j in range(i + 1, n):
                if active[j] == 0:
                    continue
                tj = pref[j, ptr[j]]
                if ti == tj or (ti == pos[j] and tj == pos[i]):
                    clash = True
                    ri = _uf_find(parent, i)
                    rj = _uf_find(parent, j)
                    if ri != rj:
                        parent[rj] = ri
        if not clash:
            break
        for i in range(n):
            best_prio[i] = 1 << 30
            best_idx[i] = -1
            gsize[i] = 0
        for i in range(n):
            if active[i] == 0:
                continue
            r = _uf_find(parent, i)
            gsize[r] += 1
            if prios[i] < best_prio[r]:
                best_prio[r] = prios[i]
                best_idx[r] = i
        for i in range(n):
            if active[i] == 0:
                continue
            r = _uf_find(parent, i)
            if gsize[r] >= 2 and best_idx[r] != i:
                ptr[i] += 1
                if ptr[i] >= plen[i]:
                    return 1, iters
    for i in range(n):
        if active[i] != 0:
            out_targets[i] = pref[i, ptr[i]]
            out_ranks[i] = ptr[i]
    return 0, iters


@maybe_jit
def commit_step(coords, dests, pos, hdg, fuel, flown, status, targets, events):
    """Simultaneous commit of one step plus separation detection.

    ``events`` rows are [kind, a, b, bitmask]: kind 0 = vertex (a = vertex),
    kind 1 = edge (a < b endpoints); bitmask has one bit per aircraft index.
    Mutates pos/hdg/fuel/flown/status in place and returns the event count.
    """
    n = pos.shape[0]
    nev = 0
    done = np.int64(0)
    for i in range(n):
        if status[i] != AIRBORNE or (done >> i) & 1:
            continue
        a = pos[i]
        b = targets[i]
        if a < b:
            lo = a
            hi = b
        else:
            lo = b
            hi = a
        mask = np.int64(0)
        for j in range(i + 1, n):
            if status[j] != AIRBORNE:
                continue
            c = pos[j]
            d = targets[j]
            if c < d:
                lo2 = c
                hi2 = d
            else:
                lo2 = d
                hi2 = c
            if lo == lo2 and hi == hi2:
                mask |= np.int64(1) << j
        if mask != 0:
            mask |= np.int64(1) << i
            events[nev, 0] = 1
            events[nev, 1] = lo
            events[nev, 2] = hi
            events[nev, 3] = mask
            nev += 1
            done |= mask
    donev = np.int64(0)
    for i in range(n):
        if status[i] != AIRBORNE or (donev >> i) & 1:
            continue
        mask = np.int64(0)
        for j in range(i + 1, n):
            if status[j] != AIRBORNE:
                continue
            if targets[i] == targets[j]:
                mask |= np.int64(1) << j
        if mask != 0:
            mask |= np.int64(1) << i
            events[nev, 0] = 0
            events[nev, 1] = targets[i]
            events[nev, 2] = -1
            events[nev, 3] = mask
            nev += 1
            donev |= mask
    collided = np.int64(0)
    for e in range(nev):
        collided |= events[e, 3]
    for i in range(n):
        if status[i] != AIRBORNE:
            continue
        old = pos[i]
        newv = targets[i]
        hdg[i] = heading_index_of_delta(coords[newv, 0] - coords[old, 0],
                                        coords[newv, 1] - coords[old, 1])
        pos[i] = newv
        fuel[i] -= 1
        flown[i] += 1
        if newv == dests[i]:
            status[i] = LANDED
        elif fuel[i] <= 0:
            status[i] = FUEL_OUT
    if collided != 0:
        for i in range(n):
            if (collided >> i) & 1:
                status[i] = COLLIDED
    return nev


@maybe_jit
def run_fused(nbr, dir_nbr, dist, coords, starts, dests, prios,
              fuel_capacity, step_limit, algo):
    """Whole-run fast lane for batch sweeps (no per-step timing).

    algo 0 = implicit, 1 = collaborative.  Returns
    (termination_code, steps, flown) with flown per aircraft.
    """
    n = starts.shape[0]
    pos = starts.copy()
    hdg = np.empty(n, dtype=np.int32)
    for i in range(n):
        first = route_next(nbr, dist, starts[i], dests[i])
        hdg[i] = heading_index_of_delta(coords[first, 0] - coords[starts[i], 0],
                                        coords[first, 1] - coords[starts[i], 1])
    fuel = np.full(n, fuel_capacity, dtype=np.int32)
    flown = np.zeros(n, dtype=np.int32)
    status = np.zeros(n, dtype=np.int8)
    active = np.ones(n, dtype=np.uint8)
    targets = np.empty(n, dtype=np.int32)
    ranks = np.empty(n, dtype=np.int32)
    events = np.empty((n, 4), dtype=np.int64)
    steps = 0
    while True:
        anyair = False
        for i in range(n):
            active[i] = 1 if status[i] == AIRBORNE else 0
            if active[i] != 0:
                anyair = True
        if not anyair:
            return TERM_ALL_LANDED, steps, flown
        if steps >= step_limit:
            return TERM_STEP_LIMIT, steps, flown
        if algo == 0:
            implicit_commands(nbr, dir_nbr, dist, coords, pos, hdg, dests,
                              prios, active, targets)
        else:
            st, _ = collab_round(nbr, dist, coords, pos, hdg, dests, prios,
                                 active, targets, ranks)
            if st != 0:
                return TERM_ALLOC_FAIL, steps, flown
        nev = commit_step(coords, dests, pos, hdg, fuel, flown, status,
                          targets, events)
        steps += 1
        if nev > 0:
            return TERM_LOS, steps, flown
        for i in range(n):
            if status[i] == FUEL_OUT:
                return TERM_FUEL, steps, flown


@maybe_jit
def astar_joint(nbr, dist, starts, dests, horizon, best_g, plan_out):
    """Certified-optimal joint plan minimizing the sum of arrival times.

    Best-first search over joint (positions, time) states with the
    consistent heuristic "sum of remaining graph distances"; all airborne
    aircraft move one edge per step, landing is absorbing, vertex and
    undirected-edge capacities are 1.  ``best_g`` is a caller-provided
    int32 workspace of size (V+1)**n * (horizon+1) filled with -1; it is
    restored to -1 before returning.  ``plan_out`` rows 0..makespan receive
    each aircraft's vertex (-1 once landed).

    Returns (status, objective, makespan); status 0 = optimal plan written,
    1 = infeasible within the horizon.
    """
    nv = nbr.shape[0]
    n = starts.shape[0]
    base = nv + 1
    h1 = horizon + 1
    pows = np.empty(n, dtype=np.int64)
    p = np.int64(1)
    for i in range(n):
        pows[i] = p
        p *= base
    goal = np.int64(0)
    s0 = np.int64(0)
    h0 = 0
    for i in range(n):
        goal += pows[i] * nv
        s0 += pows[i] * starts[i]
        d0 = dist[starts[i], dests[i]]
        if d0 > horizon:
            return 1, -1, -1
        h0 += d0
    cap = 4096
    ent_state = np.empty(cap, dtype=np.int64)
    ent_t = np.empty(cap, dtype=np.int32)
    ent_g = np.empty(cap, dtype=np.int32)
    ent_par = np.empty(cap, dtype=np.int32)
    hcap = 4096
    hkey = np.empty(hcap, dtype=np.int64)
    hent = np.empty(hcap, dtype=np.int32)
    tcap = 4096
    touched = np.empty(tcap, dtype=np.int64)
    nent = 0
    hsz = 0
    ntouch = 0
    k0 = s0 * h1
    best_g[k0] = 0
    touched[ntouch] = k0
    ntouch += 1
    ent_state[0] = s0
    ent_t[0] = 0
    ent_g[0] = 0
    ent_par[0] = -1
    nent = 1
    hkey[0] = np.int64(h0) << 40
    hent[0] = 0
    hsz = 1
    positions = np.empty(n, dtype=np.int32)
    airlist = np.empty(n, dtype=np.int32)
    ncand = np.empty(n, dtype=np.int32)
    cand = np.empty((n, 6), dtype=np.int32)
    idxs = np.empty(n, dtype=np.int32)
    tgt = np.empty(n, dtype=np.int32)
    status = 1
    obj = -1
    mk = -1
    goal_ent = -1
    while hsz > 0:
        e = hent[0]
        hsz -= 1
        hkey[0] = hkey[hsz]
        hent[0] = hent[hsz]
        i = 0
        while True:
            l = 2 * i + 1
            if l >= hsz:
                break
            m = l
            r = l + 1
            if r < hsz and hkey[r] < hkey[l]:
                m = r
            if hkey[m] >= hkey[i]:
                break
            tk = hkey[i]
            hkey[i] = hkey[m]
            hkey[m] = tk
            te = hent[i]
            hent[i] = hent[m]
            hent[m] = te
            i = m
        st = ent_state[e]
        t = ent_t[e]
        g = ent_g[e]
        if best_g[st * h1 + t] != g:
            continue
        if st == goal:
            status = 0
            obj = g
            mk = t
            goal_ent = e
            break
        if t >= horizon:
            continue
        tmp = st
        nair = 0
        for i in range(n):
            d = np.int32(tmp % base)
            tmp = tmp // base
            positions[i] = d
            if d != nv:
                airlist[nair] = i
                nair += 1
        feas = True
        for a in range(nair):
            i = airlist[a]
            m = 0
            for c in range(6):
                w = nbr[positions[i], c]
                if w < 0:
                    continue
                if t + 1 + dist[w, dests[i]] > horizon:
                    continue
                cand[a, m] = w
                m += 1
            if m == 0:
                feas = False
                break
            ncand[a] = m
        if not feas:
            continue
        for a in range(nair):
            idxs[a] = 0
        while True:
            ok = True
            for a in range(nair):
                tgt[a] = cand[a, idxs[a]]
            for a in range(nair):
                ia = airlist[a]
                for b in range(a + 1, nair):
                    ib = airlist[b]
                    if tgt[a] == tgt[b] or (tgt[a] == positions[ib]
                                            and tgt[b] == positions[ia]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                ns = st
                hh = 0
                for a in range(nair):
                    i = airlist[a]
                    w = tgt[a]
                    if w == dests[i]:
                        nd = nv
                    else:
                        nd = w
                        hh += dist[w, dests[i]]
                    ns += (np.int64(nd) - positions[i]) * pows[i]
                ng = g + nair
                nk = ns * h1 + (t + 1)
                bg = best_g[nk]
                if bg < 0 or ng < bg:
                    if bg < 0:
                        if ntouch == tcap:
                            tcap2 = tcap * 2
                            tnew = np.empty(tcap2, dtype=np.int64)
                            tnew[:tcap] = touched
                            touched = tnew
                            tcap = tcap2
                        touched[ntouch] = nk
                        ntouch += 1
                    best_g[nk] = ng
                    if nent == cap:
                        cap2 = cap * 2
                        a1 = np.empty(cap2, dtype=np.int64)
                        a1[:cap] = ent_state
                        ent_state = a1
                        a2 = np.empty(cap2, dtype=np.int32)
                        a2[:cap] = ent_t
                        ent_t = a2
                        a3 = np.empty(cap2, dtype=np.int32)
                        a3[:cap] = ent_g
                        ent_g = a3
                        a4 = np.empty(cap2, dtype=np.int32)
                        a4[:cap] = ent_par
                        ent_par = a4
                        cap = cap2
                    ent_state[nent] = ns
                    ent_t[nent] = t + 1
                    ent_g[nent] = ng
                    ent_par[nent] = e
                    if hsz == hcap:
                        hcap2 = hcap * 2
                        b1 = np.empty(hcap2, dtype=np.int64)
                        b1[:hcap] = hkey
                        hkey = b1
                        b2 = np.empty(hcap2, dtype=np.int32)
                        b2[:hcap] = hent
                        hent = b2
                        hcap = hcap2
                    key = (np.int64(ng + hh) << 40) | np.int64(nent)
                    hkey[hsz] = key
                    hent[hsz] = nent
                    ii = hsz
                    hsz += 1
                    while ii > 0:
                        pp = (ii - 1) // 2
                        if hkey[pp] <= hkey[ii]:
                            break
                        tk = hkey[pp]
                        hkey[pp] = hkey[ii]
                        hkey[ii] = tk
                        te = hent[pp]
                        hent[pp] = hent[ii]
                        hent[ii] = te
                        ii = pp
                    nent += 1
            c2 = nair - 1
            while c2 >= 0:
                idxs[c2] += 1
                if idxs[c2] < ncand[c2]:
                    break
                idxs[c2] = 0
                c2 -= 1
            if c2 < 0:
                break
    if status == 0:
        e = goal_ent
        while e >= 0:
            st = ent_state[e]
            t = ent_t[e]
            tmp = st
            for i in range(n):
                d = np.int32(tmp % base)
                tmp = tmp // base
                if d == nv:
                    plan_out[t, i] = -1
                else:
                    plan_out[t, i] = d
            e = ent_par[e]
    for x in range(ntouch):
        best_g[touched[x]] = -1
    return status, obj, mk
