"""Hexagonal-lattice airspace graph: coordinates, headings, adjacency, paths.

Axial coordinates (q, r) embed into the plane as x = q + r/2,
y = r * sqrt(3)/2 (east = +x, north = +y), so every lattice edge has
Euclidean length 1 and one lattice axis runs exactly east-west.  Compass
headings are the six edge directions {30, 90, ..., 330} degrees with
0 = north and clockwise positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K

SQRT3 = math.sqrt(3.0)

HEADINGS = (30, 90, 150, 210, 270, 330)

# canonical neighbor offset order; index into this is the tie-break order
# used everywhere (shortest paths, preference lists, solver branching)
NEIGHBOR_OFFSETS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

# offset -> compass heading of that edge direction
OFFSET_HEADING = {
    (1, 0): 90,
    (0, 1): 30,
    (-1, 1): 330,
    (-1, 0): 270,
    (0, -1): 210,
    (1, -1): 150,
}
HEADING_OFFSET = {h: o for o, h in OFFSET_HEADING.items()}


@dataclass(frozen=True, order=True)
class AxialCoord:
    """Integer lattice coordinate; belongs to radius R iff |q|,|r|,|q+r| <= R."""

    q: int
    r: int

    def xy(self) -> tuple[float, float]:
        return (self.q + self.r / 2.0, self.r * SQRT3 / 2.0)

    def __repr__(self) -> str:
        return f"AxialCoord({self.q}, {self.r})"


@dataclass(frozen=True, order=True)
class EdgeId:
    """Undirected edge between adjacent vertices; endpoint order is canonical."""

    a: AxialCoord
    b: AxialCoord

    @staticmethod
    def of(u: AxialCoord, v: AxialCoord) -> "EdgeId":
        if not _adjacent(u, v):
            raise ValueError(f"not an edge: {u} -- {v}")
        return EdgeId(u, v) if u <= v else EdgeId(v, u)


def _adjacent(a: AxialCoord, b: AxialCoord) -> bool:
    return (b.q - a.q, b.r - a.r) in OFFSET_HEADING


def hex_distance(a: AxialCoord, b: AxialCoord) -> int:
    """Lattice metric (|dq| + |dr| + |dq+dr|) / 2; equals the graph distance
    whenever no boundary blocks the straight corridor."""
    dq = a.q - b.q
    dr = a.r - b.r
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def heading_index(h: int) -> int:
    """Compass heading -> internal index 0..5 (30 -> 0, 90 -> 1, ...)."""
    if h not in OFFSET_HEADING.values():
        raise ValueError(f"not a lattice heading: {h}")
    return (h - 30) // 60


def heading_from_index(i: int) -> int:
    return 30 + 60 * (i % 6)


def rotate(h: int, steps_clockwise: int) -> int:
    """Rotate a heading by 60-degree steps, clockwise positive."""
    return heading_from_index(heading_index(h) + steps_clockwise)


def heading_between(a: AxialCoord, b: AxialCoord) -> int:
    """Compass heading of the edge from a to b; the pair must be adjacent."""
    off = (b.q - a.q, b.r - a.r)
    h = OFFSET_HEADING.get(off)
    if h is None:
        raise ValueError(f"vertices are not adjacent: {a} -> {b}")
    return h


def conflict_angle(own: int, intruder: int) -> int:
    """Heading difference (intruder - own) mod 360; one of 60..300.

    Equal headings are not a conflict geometry under equal speeds.
    """
    a = (heading_index(intruder) - heading_index(own)) % 6 * 60
    if a == 0:
        raise ValueError("equal headings do not form a conflict angle")
    return a


def is_south_or_due_west(h: int) -> bool:
    """True for headings with a negative north component, or exactly west."""
    heading_index(h)
    return h in (150, 210, 270)


class HexLattice:
    """Regular hexagon of triangular-lattice vertices, radius R.

    Immutable after construction; safe to share across concurrent readers.
    Vertex order and per-vertex neighbor order are canonical and
    deterministic across runs.
    """

    def __init__(self, radius: int):
        if not isinstance(radius, (int, np.integer)) or radius < 0:
            raise ValueError(f"radius must be a nonnegative integer, got {radius!r}")
        self.radius = int(radius)
        verts: list[AxialCoord] = []
        for q in range(-radius, radius + 1):
            for r in range(-radius, radius + 1):
                if abs(q + r) <= radius:
                    verts.append(AxialCoord(q, r))
        self.vertices: tuple[AxialCoord, ...] = tuple(verts)
        self._index: dict[AxialCoord, int] = {v: i for i, v in enumerate(verts)}
        nv = len(verts)
        self.coords = np.empty((nv, 2), dtype=np.int32)
        for i, v in enumerate(verts):
            self.coords[i, 0] = v.q
            self.coords[i, 1] = v.r
        # nbr[v, c]: neighbor at canonical offset slot c, -1 off-lattice
        self.nbr = np.full((nv, 6), -1, dtype=np.int32)
        # dir_nbr[v, h]: neighbor in compass direction 30 + 60h, -1 off-lattice
        self.dir_nbr = np.full((nv, 6), -1, dtype=np.int32)
        adjacency: dict[AxialCoord, tuple[AxialCoord, ...]] = {}
        for i, v in enumerate(verts):
            row = []
            for c, (dq, dr) in enumerate(NEIGHBOR_OFFSETS):
                w = AxialCoord(v.q + dq, v.r + dr)
                j = self._index.get(w)
                if j is not None:
                    self.nbr[i, c] = j
                    self.dir_nbr[i, heading_index(OFFSET_HEADING[(dq, dr)])] = j
                    row.append(w)
            adjacency[v] = tuple(row)
        self.adjacency = adjacency
        self.dist = K.all_pairs_distances(self.nbr)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def n_edges(self) -> int:
        return int((self.nbr >= 0).sum()) // 2

    def edges(self) -> list[EdgeId]:
        out = []
        for v in self.vertices:
            for w in self.adjacency[v]:
                if v <= w:
                    out.append(EdgeId(v, w))
        return out

    def __contains__(self, v: AxialCoord) -> bool:
        return v in self._index

    def contains(self, v: AxialCoord) -> bool:
        return v in self._index

    def neighbors(self, v: AxialCoord) -> tuple[AxialCoord, ...]:
        return self.adjacency[v]

    def index_of(self, v: AxialCoord) -> int:
        return self._index[v]

    def coord_of(self, i: int) -> AxialCoord:
        return self.vertices[i]

    def graph_distance(self, a: AxialCoord, b: AxialCoord) -> int:
        return int(self.dist[self._index[a], self._index[b]])

    def shortest_path(self, src: AxialCoord, dst: AxialCoord) -> list[AxialCoord]:
        """Minimum-length path, ties broken by first canonical neighbor."""
        if src not in self._index or dst not in self._index:
            raise ValueError("both vertices must lie in the lattice")
        si = self._index[src]
        di = self._index[dst]
        path = [src]
        v = si
        while v != di:
            v = int(K.route_next(self.nbr, self.dist, v, di))
            path.append(self.vertices[v])
        return path

    def __repr__(self) -> str:
        return f"HexLattice(radius={self.radius}, vertices={self.n_vertices})"


def build_lattice(radius: int) -> HexLattice:
    """Construct the radius-R hexagonal lattice (3R^2 + 3R + 1 vertices)."""
    return HexLattice(radius)
