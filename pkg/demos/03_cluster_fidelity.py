"""Fidelity and success probability of a growing 3D cluster state.

Builds the photon chain for a 2 x 2 x L lattice with the measured
quantum-dot parameters at B = 12 T, comparing the imperfect-gate state
against the ideal cluster photon by photon.  The fidelity decays
exponentially with a per-photon scaling factor beta close to 0.97; an
8-photon state survives complete detection with probability about 0.1,
i.e. one cluster state every few hundred nanoseconds.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from photoncluster import cavity, metrics, tensornet
from photoncluster.lattice import LatticeDims

dims = LatticeDims((2, 2, 10))          # up to 40 photons
error_model = metrics.ErrorModel(p=0.02, t2=2000.0, t_cycle=5.0, eta=0.8)

gate = metrics.magnetic_spin_photon_gate(cavity.quantum_dot_params(12.0))
reports = metrics.fidelity_curve(dims, tensornet.photon_edge_gates(gate, dims),
                                 error_model)
fit = metrics.fit_beta(metrics.scaling_points(reports, dims))

print("2 x 2 stack, B = 12 T, p = 0.02, T2 = 2 us, T_cycle = 5 ns, eta = 0.8")
print(f"  fitted scaling factor beta = {fit.beta:.4f} per photon")
r8 = reports[7]
rate = metrics.generation_rate(r8.p_success, 8, error_model.t_cycle)
print(f"  8-photon state: F0 = {r8.f0:.4f}, F1 = {r8.f1:.4f}, "
      f"P = {r8.p_success:.4f}")
print(f"  generation rate at 8 photons: {rate:.3e} per second")

ks = [r.k_photons for r in reports]
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
ax1.semilogy(ks, [r.f0 for r in reports], "o", ms=3, label="gate errors only")
ax1.semilogy(ks, [r.f1 for r in reports], "s", ms=3, label="with spin errors")
ax1.semilogy(ks, [fit.amplitude * fit.beta ** k for k in ks], "-",
             lw=1, label=f"{fit.beta:.3f}^K fit")
ax1.set_xlabel("photon number")
ax1.set_ylabel("fidelity")
ax1.legend()
ax2.semilogy(ks, [r.p_success for r in reports], "o", ms=3)
ax2.set_xlabel("photon number")
ax2.set_ylabel("success probability")
fig.tight_layout()
fig.savefig("cluster_fidelity.png", dpi=150)
print("wrote cluster_fidelity.png")

# larger stacks decay at the same rate; only the first photons differ
print("\nstack-size comparison (same physics):")
for stack, layers in [((2, 2), 10), ((2, 3), 7), ((3, 2), 7)]:
    d = LatticeDims(stack + (layers,))
    rep = metrics.fidelity_curve(d, tensornet.photon_edge_gates(gate, d),
                                 error_model)
    f = metrics.fit_beta(metrics.scaling_points(rep, d))
    print(f"  {stack[0]} x {stack[1]} stack: beta = {f.beta:.4f}, "
          f"amplitude = {f.amplitude:.4f}")
