"""Coordinates of a d-dimensional lattice rearranged as a linear photon chain.

A site (n_1, ..., n_d) maps to the chain index
k = 1 + sum_m (n_m - 1) prod_{l<m} N_l, so lattice adjacency becomes a set
of fixed chain offsets {1, N_1, N_1 N_2, ...}.  Working purely with chain
offsets builds in the helical boundary: site (N, M, l) sits next to
(1, 1, l+1) in the chain, so they end up entangled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LatticeDims:
    """Lattice dimensions plus the number of photons actually emitted.

    ``photon_count`` may be smaller than the full lattice to model a
    partially filled last layer; edges reaching beyond it are dropped.
    """

    dims: tuple
    photon_count: int = 0   # 0 means the full lattice

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if len(dims) < 1 or any(n < 1 for n in dims):
            raise ValueError("dims must be a nonempty tuple of positive ints")
        object.__setattr__(self, "dims", dims)
        total = math.prod(dims)
        k = self.photon_count if self.photon_count else total
        if not 1 <= k <= total:
            raise ValueError(f"photon_count must lie in 1..{total}")
        object.__setattr__(self, "photon_count", int(k))

    @property
    def ndim(self):
        return len(self.dims)

    @property
    def total_sites(self):
        return math.prod(self.dims)

    @property
    def offsets(self):
        """Chain offsets realized by the entangling hardware: one per
        dimension, (1, N_1, N_1 N_2, ..., prod_{l<d} N_l)."""
        out = []
        acc = 1
        for n in self.dims:
            out.append(acc)
            acc *= n
        return tuple(out)

    @property
    def max_offset(self):
        return self.offsets[-1]


@dataclass(frozen=True)
class EdgeSpec:
    """One entangled pair of chain sites, ``earlier = later - offset``."""

    earlier: int
    later: int
    offset: int


def linear_index(coord, dims: LatticeDims) -> int:
    """Chain index of a lattice coordinate (1-based in every dimension)."""
    coord = tuple(coord)
    if len(coord) != dims.ndim:
        raise ValueError(f"expected {dims.ndim} coordinates, got {len(coord)}")
    for c, n in zip(coord, dims.dims):
        if not 1 <= c <= n:
            raise ValueError(f"coordinate {coord} outside lattice {dims.dims}")
    k = 1
    stride = 1
    for c, n in zip(coord, dims.dims):
        k += (c - 1) * stride
        stride *= n
    return k


def coord_of(k: int, dims: LatticeDims):
    """Lattice coordinate of chain index k (inverse of linear_index)."""
    if not 1 <= k <= dims.total_sites:
        raise ValueError(f"chain index {k} outside 1..{dims.total_sites}")
    rem = k - 1
    coord = []
    for n in dims.dims:
        coord.append(rem % n + 1)
        rem //= n
    return tuple(coord)


def chain_edges(dims: LatticeDims):
    """All entangled pairs of the generated state, as chain offsets.

    For each photon k and offset o the pair (k - o, k) exists whenever
    k - o >= 1; pairs reaching past ``photon_count`` never form.
    """
    edges = []
    for k in range(1, dims.photon_count + 1):
        for o in dims.offsets:
            if k - o >= 1:
                edges.append(EdgeSpec(k - o, k, o))
    return edges


def entangling_order(dims: LatticeDims):
    """Edges grouped by photon, in the order the feedback hardware realizes
    them.

    The nearest-neighbor link of photon k is carried by the ancilla handoff
    of the previous cycle, so it comes first; the long-range links are then
    applied longest offset first as the delayed photons return to the
    cavity.  The order only matters once gates are imperfect (the
    nearest-neighbor gate is no longer diagonal).
    """
    offsets = dims.offsets
    batches = []
    for k in range(1, dims.photon_count + 1):
        batch = []
        if k - 1 >= 1:
            batch.append(EdgeSpec(k - 1, k, 1))
        for o in reversed(offsets[1:]):
            if k - o >= 1:
                batch.append(EdgeSpec(k - o, k, o))
        batches.append(batch)
    return batches
