"""Two-qubit operators of the reflection protocol and their tensor splits.

Basis ordering is fixed package-wide as |x>_first (x) |y>_second with
index 2*x + y.  Reflection gates are written photon-first: for a gate on a
photon pair (j, k) with j < k, the returning photon j occupies the first
slot and the freshly injected photon k the ancilla-role second slot, so the
matrices below apply without transposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cavity import ReflectionPair

SQRT2 = np.sqrt(2.0)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / SQRT2
HADAMARD_PAIR = np.kron(HADAMARD, HADAMARD)
CPHASE = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
SWAP = np.array([[1, 0, 0, 0],
                 [0, 0, 1, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1]], dtype=complex)

# quarter-wave phase on each qubit, diag(1, i, i, -1)
PHASE_FIX = np.kron(np.diag([1.0, 1j]), np.diag([1.0, 1j]))

# Schmidt values below this are numerical noise for 4x4 operators.
SCHMIDT_TOL = 1e-12

_NAMED = {
    "cphase": CPHASE,
    "hadamard_pair": HADAMARD_PAIR,
    "swap": SWAP,
    "identity": np.eye(4, dtype=complex),
}


def standard_gate(name: str) -> np.ndarray:
    """One of the fixed gates: cphase, hadamard_pair, swap, identity."""
    try:
        return _NAMED[name].copy()
    except KeyError:
        raise ValueError(f"unknown gate name {name!r}") from None


def u_rf(r: ReflectionPair) -> np.ndarray:
    """Spin-photon reflection gate diag(1, 1, r_up, r_down).

    The horizontal photon polarization bounces off a mirror (unit
    reflection); the vertical polarization picks up the spin-conditioned
    cavity reflection.  With r_up = 1 and r_down = -1 this is the CPHASE
    gate.
    """
    return np.diag([1.0, 1.0, r.r_up, r.r_down]).astype(complex)


def u_cr(r1: complex) -> np.ndarray:
    """Chiral reflection gate diag(r1, -1, -1, r1).

    Each circular polarization addresses one spin state, so only the
    aligned photon-spin combinations see the coupled cavity (r1); the
    anti-aligned ones reflect off an effectively empty cavity (-1).
    """
    return np.diag([r1, -1.0, -1.0, r1]).astype(complex)


def chiral_phase_fix(u: np.ndarray) -> np.ndarray:
    """Single-qubit phase shifts that turn the chiral reflection into a
    CPHASE up to a global phase: returns diag(1, i, i, -1) @ u."""
    return PHASE_FIX @ np.asarray(u, dtype=complex)


@dataclass(frozen=True)
class ErrorSplit:
    """Decomposition U = (I + epsilon R) Z of an imperfect CPHASE."""

    epsilon: float
    r_tensor: np.ndarray


def error_split(u: np.ndarray) -> ErrorSplit:
    """Split a gate as U = (I + epsilon R) Z with epsilon the spectral norm
    of U Z - I.  For a perfect CPHASE epsilon = 0 and R = 0."""
    m = np.asarray(u, dtype=complex) @ CPHASE - np.eye(4)
    eps = float(np.linalg.norm(m, 2))
    r = m / eps if eps > 1e-15 else np.zeros((4, 4), dtype=complex)
    return ErrorSplit(eps, r)


def nearest_neighbor_gate(u: np.ndarray) -> np.ndarray:
    """Effective photon-photon gate on chain neighbors.

    The Hadamards that hand the ancilla state to the photon conjugate the
    gate error: the result is [I + eps (HxH) R (HxH)] Z, computed here as
    (HxH) (U Z) (HxH) Z.  Perfect reflections give back CPHASE; imperfect
    ones give a generally non-diagonal imperfect CPHASE.
    """
    u = np.asarray(u, dtype=complex)
    return HADAMARD_PAIR @ (u @ CPHASE) @ HADAMARD_PAIR @ CPHASE


@dataclass(frozen=True)
class GateTensorPair:
    """Operator-Schmidt split of a two-qubit gate.

    ``tensor_a`` acts on the first qubit and ``tensor_b`` on the second,
    both indexed (out, in, bond).  Contracting over the bond reconstructs
    the gate; ``bond_dim`` is the operator-Schmidt rank.
    """

    tensor_a: np.ndarray
    tensor_b: np.ndarray
    bond_dim: int
    singular_values: np.ndarray


def svd_split(u: np.ndarray) -> GateTensorPair:
    """Split a 4x4 gate across the qubit partition by SVD.

    The matrix is reshuffled so rows carry the (out, in) indices of the
    first qubit and columns those of the second, then factored; sqrt of the
    singular values is absorbed into each side.
    """
    u = np.asarray(u, dtype=complex)
    reshuffled = u.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    w, s, vh = np.linalg.svd(reshuffled)
    keep = s > SCHMIDT_TOL
    if not keep.any():
        keep[0] = True
    s = s[keep]
    root = np.sqrt(s)
    a = (w[:, keep] * root).reshape(2, 2, -1)
    b = (vh[keep, :].T * root).reshape(2, 2, -1)
    return GateTensorPair(a, b, int(len(s)), s)


def contract_split(pair: GateTensorPair) -> np.ndarray:
    """Rebuild the 4x4 gate from its operator-Schmidt split."""
    a, b = pair.tensor_a, pair.tensor_b
    return sum(np.kron(a[:, :, i], b[:, :, i]) for i in range(pair.bond_dim))
