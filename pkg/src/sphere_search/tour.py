"""Closed inspection tours over the vertices of a scaled cross-polytope.

The cross-polytope scaled by sqrt(d) contains the unit sphere (the L1 ball
of radius sqrt(d) does, by Cauchy-Schwarz), so a closed walk through all of
its 2d vertices sees every sphere point. Consecutive vertices must never be
antipodal; every such edge then has length sqrt(2d) and the full tour has
length 2d * sqrt(2d) = (2d)**1.5.
"""

import math

import numpy as np

from .geometry import PolylineCurve


def default_scale(dim: int) -> float:
    return math.sqrt(dim)


def tour_length(dim: int) -> float:
    """Closed-form length of the inspection tour: (2d)**(3/2)."""
    return (2.0 * dim) ** 1.5


def cross_polytope_vertices(dim: int, scale: float | None = None) -> np.ndarray:
    """The 2d vertices +/- scale * e_i, in label order +1..+d, -1..-d."""
    if dim < 2:
        raise ValueError("cross-polytope tours need dim >= 2")
    s = default_scale(dim) if scale is None else float(scale)
    if s <= 0.0:
        raise ValueError("scale must be positive")
    eye = np.eye(dim) * s
    return np.vstack([eye, -eye])


def hamiltonian_cycle(dim: int) -> list[int]:
    """Explicit vertex order (+1, ..., +d, -1, ..., -d).

    Valid for dim >= 2: consecutive labels (cyclically) never form an
    antipodal pair, so every step is an edge of the polytope skeleton.
    """
    if dim < 2:
        raise ValueError("need dim >= 2")
    return list(range(1, dim + 1)) + list(range(-1, -dim - 1, -1))


def hamiltonian_cycle_inductive(dim: int) -> list[int]:
    """Alternative generator: grow the cycle one axis pair at a time.

    Starting from the square cycle in two dimensions, each new axis inserts
    +k into one existing cycle edge and -k into a different one; inserted
    labels are adjacent only to other axes, never to each other.
    """
    if dim < 2:
        raise ValueError("need dim >= 2")
    cycle = [1, 2, -1, -2]
    for k in range(3, dim + 1):
        cycle = [cycle[0], k, cycle[1], cycle[2], -k] + cycle[3:]
    return cycle


def check_hamiltonian_order(order: list[int], dim: int) -> None:
    """Raise unless `order` is a valid Hamiltonian cycle of the skeleton."""
    expect = set(range(1, dim + 1)) | set(range(-dim, 0))
    if len(order) != 2 * dim or set(order) != expect:
        raise ValueError("order is not a permutation of +/-1..d")
    for i, label in enumerate(order):
        nxt = order[(i + 1) % len(order)]
        if label == -nxt:
            raise ValueError(f"antipodal labels adjacent at position {i}: {label}, {nxt}")


def vertices_in_order(dim: int, order: list[int],
                      scale: float | None = None) -> np.ndarray:
    s = default_scale(dim) if scale is None else float(scale)
    out = np.zeros((len(order), dim))
    for row, label in enumerate(order):
        out[row, abs(label) - 1] = s if label > 0 else -s
    return out


def build_inspection_tour(dim: int, scale: float | None = None) -> PolylineCurve:
    """Closed tour of the scaled cross-polytope vertices, starting at +scale*e1.

    With the default scale sqrt(d) the tour inspects the unit sphere and its
    length is (2d)**1.5 exactly.
    """
    if dim < 2:
        raise ValueError("need dim >= 2")
    order = hamiltonian_cycle(dim)
    check_hamiltonian_order(order, dim)
    return PolylineCurve(vertices_in_order(dim, order, scale), closed=True)
