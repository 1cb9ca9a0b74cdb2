"""Sequential matrix product state engine for the feedback-generated chain.

The protocol's causal structure bounds how far entangling gates reach: at
any moment only the ancilla and the photons still inside the delay lines
can interact, i.e. the ``max_offset + 1`` youngest chain sites.  The
builder keeps exactly that window as a dense amplitude block, applies each
photon's gates, and splits finished sites off as MPS tensors by SVD.  No
truncation beyond the numerical noise floor, so the assembled state is
exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gates, lattice
from .errors import ResourceLimitError

# 2^13 amplitudes per window column is the desk-scale budget.
MAX_WINDOW_SITES = 13

# singular values below this fraction of the largest are numerical noise
RETIRE_TOL = 1e-12

_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


@dataclass
class SequentialMPS:
    """Open-boundary MPS over the photon chain, one (left, phys, right)
    tensor per photon."""

    tensors: list

    def __post_init__(self):
        if self.tensors:
            if self.tensors[0].shape[0] != 1 or self.tensors[-1].shape[2] != 1:
                raise ValueError("outer bonds of an open chain must have dimension 1")

    def __len__(self):
        return len(self.tensors)

    @property
    def bond_dims(self):
        return tuple(t.shape[2] for t in self.tensors[:-1])

    def norm_squared(self) -> float:
        return inner_product(self, self).real

    def scaled(self, factor):
        """Same state with the overall amplitude multiplied by ``factor``."""
        out = [t.copy() for t in self.tensors]
        out[0] = out[0] * factor
        return SequentialMPS(out)

    def to_dense(self) -> np.ndarray:
        """Full amplitude vector; guarded to small chains."""
        if len(self.tensors) > 14:
            raise ResourceLimitError("dense contraction capped at 14 sites")
        vec = np.ones((1, 1), dtype=complex)
        for t in self.tensors:
            vec = np.einsum("xl,lpr->xpr", vec, t).reshape(-1, t.shape[2])
        return vec[:, 0]


def advance_environment(env, t_bra, t_ket):
    """One transfer step of <bra|ket>: contract a site tensor pair into the
    bond environment.  env is (bra bond, ket bond)."""
    dk = t_ket.shape[0]
    x = env @ t_ket.reshape(dk, -1)                      # (a, phys*right)
    x = x.reshape(-1, t_ket.shape[2])                    # (a*phys, right)
    bra = t_bra.conj().reshape(-1, t_bra.shape[2])       # (a*phys, right)
    return bra.T @ x


def inner_product(a: SequentialMPS, b: SequentialMPS) -> complex:
    """<a|b> by left-to-right transfer contraction."""
    if len(a) != len(b):
        raise ValueError(f"chain length mismatch: {len(a)} vs {len(b)}")
    env = np.ones((1, 1), dtype=complex)
    for ta, tb in zip(a.tensors, b.tensors):
        env = advance_environment(env, ta, tb)
    return complex(env[0, 0])


class WindowBuilder:
    """Dense active window over the youngest chain sites.

    ``inject`` appends a fresh |+> photon, ``apply_edge`` contracts a
    two-qubit gate into the window, and ``retire_through`` splits sites no
    future gate touches off as MPS tensors.
    """

    def __init__(self, max_window=MAX_WINDOW_SITES):
        self.block = np.ones((1, 1), dtype=complex)   # (left bond, site block)
        self.first_active = 1
        self.n_active = 0
        self.emitted = []
        self.max_window = max_window

    def inject(self):
        if self.n_active + 1 > self.max_window:
            raise ResourceLimitError(
                f"active window would exceed {self.max_window} sites; "
                "stack too large for exact contraction")
        self.block = np.kron(self.block, _PLUS[None, :])
        self.n_active += 1

    def apply_edge(self, earlier, later, gate):
        ia = earlier - self.first_active
        ib = later - self.first_active
        if not (0 <= ia < ib < self.n_active):
            raise ValueError(f"sites ({earlier}, {later}) not inside the active window")
        d = self.block.shape[0]
        shape = (d, 2 ** ia, 2, 2 ** (ib - ia - 1), 2, 2 ** (self.n_active - 1 - ib))
        blk = self.block.reshape(shape)
        blk = np.moveaxis(blk, (2, 4), (0, 1)).reshape(4, -1)
        blk = np.asarray(gate, dtype=complex) @ blk
        blk = np.moveaxis(blk.reshape((2, 2) + shape[:2] + shape[3:4] + shape[5:]),
                          (0, 1), (2, 4))
        self.block = blk.reshape(d, -1)

    def retire_through(self, site):
        """Split off every active site <= ``site``; returns the new tensors."""
        new = []
        while self.first_active <= site and self.n_active > 1:
            d = self.block.shape[0]
            mat = self.block.reshape(d * 2, -1)
            u, s, vh = np.linalg.svd(mat, full_matrices=False)
            keep = s > s[0] * RETIRE_TOL if s[0] > 0 else slice(0, 1)
            u, s, vh = u[:, keep], s[keep], vh[keep]
            new.append(u.reshape(d, 2, -1))
            self.block = s[:, None] * vh
            self.first_active += 1
            self.n_active -= 1
        self.emitted.extend(new)
        return new

    def window_block(self):
        return self.block

    def finalize(self) -> SequentialMPS:
        self.retire_through(self.first_active + self.n_active - 2)
        tensors = list(self.emitted)
        tensors.append(self.block.reshape(self.block.shape[0], 2, 1))
        return SequentialMPS(tensors)


def photon_edge_gates(spin_photon_gate, dims: lattice.LatticeDims):
    """Photon-photon gate for every chain offset of ``dims``.

    Long-range links see the spin-photon gate itself (the returning photon
    in the first slot); the nearest-neighbor link sees its
    Hadamard-conjugated form produced by the ancilla handoff.
    """
    u = np.asarray(spin_photon_gate, dtype=complex)
    table = {1: gates.nearest_neighbor_gate(u)}
    for o in dims.offsets[1:]:
        table[o] = u
    return table


def ideal_edge_gates(dims: lattice.LatticeDims):
    return {o: gates.CPHASE for o in dims.offsets}


def build_state(dims: lattice.LatticeDims, edge_gates, window_slack=0) -> SequentialMPS:
    """Assemble the generated chain state as an exact MPS.

    ``edge_gates`` maps every chain offset of ``dims`` to its 4x4 gate.
    Gates are applied photon by photon in the hardware order
    (:func:`lattice.entangling_order`); a site retires once the window has
    moved ``max_offset`` sites past it.  ``window_slack`` delays retirement
    and must not change the state (pure regrouping of the contraction).
    """
    needed = set(dims.offsets)
    given = set(edge_gates)
    if given != needed:
        raise ValueError(f"edge gate map has offsets {sorted(given)}, "
                         f"but the lattice needs {sorted(needed)}")
    builder = WindowBuilder()
    reach = dims.max_offset + window_slack
    for k, batch in enumerate(lattice.entangling_order(dims), start=1):
        builder.inject()
        for e in batch:
            builder.apply_edge(e.earlier, e.later, edge_gates[e.offset])
        builder.retire_through(k - reach)
    return builder.finalize()


def peps_site_tensor_1d(k: int, length: int) -> np.ndarray:
    """Canonical site tensor of the 1D cluster state.

    Built by contracting |+> with the halves of the operator-Schmidt split
    of CPHASE: the second-qubit half of the (k-1, k) gate and the
    first-qubit half of the (k, k+1) gate.  Boundary sites carry only one
    half.  Assembling all tensors reproduces the 1D cluster state exactly.
    """
    if not 1 <= k <= length:
        raise ValueError(f"site {k} outside chain 1..{length}")
    split = gates.svd_split(gates.CPHASE)
    a, b = split.tensor_a, split.tensor_b            # (out, in, bond)
    vec = _PLUS
    if length == 1:
        return vec.reshape(1, 2, 1)
    if k == 1:
        t = np.einsum("pqs,q->ps", a, vec)           # only a right half
        return t.reshape(1, 2, -1)
    if k == length:
        t = np.einsum("pqs,q->sp", b, vec)           # only a left half
        return t.reshape(-1, 2, 1)
    return np.einsum("pmr,mql,q->lpr", a, b, vec)
