"""hexsky: deterministic multi-aircraft deconfliction on hexagonal lattices."""

from .hexlattice import (
    AxialCoord,
    EdgeId,
    HexLattice,
    build_lattice,
    conflict_angle,
    heading_between,
    hex_distance,
    is_south_or_due_west,
    rotate,
)

__all__ = [
    "AxialCoord",
    "EdgeId",
    "HexLattice",
    "build_lattice",
    "conflict_angle",
    "heading_between",
    "hex_distance",
    "is_south_or_due_west",
    "rotate",
]
