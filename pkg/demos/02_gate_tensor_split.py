"""Two-qubit gates as tensor pairs.

Every two-qubit gate splits across the qubit partition into two rank-3
tensors joined by a bond whose dimension is the operator-Schmidt rank.
For CPHASE the rank is 2 (it is a sum of two product operators), which is
what keeps the cluster-state tensor network cheap.  The imperfect
reflection gate decomposes as U = (I + eps R) Z, and conjugating the error
with Hadamards gives the effective gate between chain neighbors.
"""

import numpy as np

from photoncluster import cavity, gates

np.set_printoptions(precision=4, suppress=True, linewidth=110)

split = gates.svd_split(gates.CPHASE)
print("CPHASE operator-Schmidt split")
print(f"  bond dimension   : {split.bond_dim}")
print(f"  singular values  : {split.singular_values}  (both sqrt(2))")
print(f"  reconstruction   : "
      f"{np.max(np.abs(gates.contract_split(split) - gates.CPHASE)):.2e}")

pair = cavity.spin_dependent_reflection(cavity.quantum_dot_params(12.0))
u = gates.u_rf(pair)
err = gates.error_split(u)
print("\nimperfect reflection gate at B = 12 T")
print(f"  diag(U) = {np.diagonal(u)}")
print(f"  error size eps = {err.epsilon:.4f}")

nn = gates.nearest_neighbor_gate(u)
print("\neffective nearest-neighbor gate (Hadamard-conjugated error):")
print(nn)
nn_split = gates.svd_split(nn)
print(f"  operator-Schmidt rank: {nn_split.bond_dim}")
print(f"  reconstruction error : "
      f"{np.max(np.abs(gates.contract_split(nn_split) - nn)):.2e}")

fixed = gates.chiral_phase_fix(gates.u_cr(-1j))
print("\nchiral gate after the phase fix (perfect-cooperativity limit):")
print(fixed)
print("equals CPHASE up to the global phase -i")
