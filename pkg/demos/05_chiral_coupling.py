"""Chiral coupling removes the magnetic-field tradeoff.

With polarization-selective coupling each circular polarization addresses
one spin state, so no Zeeman splitting is needed: detuning the photon by
(kappa/2) sqrt(C^2 - 1) makes the coupled reflection exactly -i sqrt((C-1)
/(C+1)), and single-qubit phase shifts turn the reflection into an almost
perfect CPHASE.  The fidelity is then limited by the spin error alone.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from photoncluster import cavity, metrics, tensornet
from photoncluster.lattice import LatticeDims

dims = LatticeDims((2, 2, 10))

_, r1, delta_s = cavity.chiral_reflection(cavity.ChiralParams(cooperativity=100.0))
print(f"C = 100 working point: r1 = {r1:.5f}, "
      f"delta_s/2pi = {delta_s / cavity.TWO_PI:.3f} GHz")

error_model = metrics.ErrorModel(p=0.001, t2=5000.0, t_cycle=5.0, eta=1.0)
gate = metrics.chiral_spin_photon_gate(100.0)
reports = metrics.fidelity_curve(dims, tensornet.photon_edge_gates(gate, dims),
                                 error_model)
fit = metrics.fit_beta(metrics.scaling_points(reports, dims))
print(f"C = 100, p = 0.001, T2 = 5 us: beta = {fit.beta:.4f} per photon")

# scaling factor over the (cooperativity, spin error) plane
coops = np.geomspace(10.0, 1000.0, 13)
spin_errors = np.geomspace(1e-4, 1e-2, 9)
cells = metrics.sweep_beta(coops, spin_errors, "chiral", dims)
grid = np.array([c.beta for c in cells]).reshape(len(coops), len(spin_errors))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
ks = [r.k_photons for r in reports]
ax1.semilogy(ks, [r.f1 for r in reports], "o", ms=3)
ax1.semilogy(ks, [fit.amplitude * fit.beta ** k for k in ks], "-", lw=1,
             label=f"{fit.beta:.4f}^K")
ax1.set_xlabel("photon number")
ax1.set_ylabel("fidelity")
ax1.legend()
pc = ax2.pcolormesh(spin_errors, coops, grid, shading="nearest")
ax2.set_xscale("log")
ax2.set_yscale("log")
ax2.set_xlabel("spin error per photon")
ax2.set_ylabel("cooperativity")
fig.colorbar(pc, ax=ax2, label="beta")
fig.tight_layout()
fig.savefig("chiral_coupling.png", dpi=150)
print("wrote chiral_coupling.png")

spot = metrics.sweep_cell(100.0, 0.0015, "chiral", dims)
print(f"grid cell (C = 100, spin error = 0.0015): beta = {spot.beta:.4f}")
