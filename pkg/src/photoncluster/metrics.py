"""Fidelity, success probability, exponential scaling fits, and the
parameter sweeps over cooperativity, magnetic field and spin error."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cavity, gates, lattice, tensornet


@dataclass(frozen=True)
class ErrorModel:
    """Classical spin-error model: depolarization at rate ``p`` per cycle
    and dephasing over ``t2``, sampled every ``t_cycle``; ``eta`` is the
    state-independent detection efficiency."""

    p: float          # depolarization rate per cycle
    t2: float         # spin dephasing time, ns
    t_cycle: float    # photon injection period, ns
    eta: float        # detection efficiency

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.t2 <= 0 or self.t_cycle <= 0:
            raise ValueError("t2 and t_cycle must be > 0")
        if not self.t_cycle < self.t2:
            raise ValueError("t_cycle must be smaller than t2")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError("eta must lie in [0, 1]")


@dataclass(frozen=True)
class FidelityReport:
    k_photons: int
    f0: float
    f1: float
    p_success: float


@dataclass(frozen=True)
class FitResult:
    beta: float
    amplitude: float
    residual: float


@dataclass(frozen=True)
class SweepCell:
    axis1: float
    axis2: float
    beta: float
    amplitude: float
    residual: float
    status: str


def alpha(e: ErrorModel) -> float:
    """Per-photon fidelity factor (1 - p/2)(1 - t_cycle/t2) of the combined
    spin rotation and dephasing errors."""
    return (1.0 - e.p / 2.0) * (1.0 - e.t_cycle / e.t2)


def fidelity_f0(ideal: tensornet.SequentialMPS,
                generated: tensornet.SequentialMPS) -> float:
    """Gate-error fidelity |<ideal|generated>|^2 / <generated|generated>.

    Invariant under rescaling of either state, so the generated state may
    be left unnormalized.
    """
    n2g = tensornet.inner_product(generated, generated).real
    if n2g <= 1e-300:
        raise ValueError("generated state has zero norm")
    n2i = tensornet.inner_product(ideal, ideal).real
    ov = tensornet.inner_product(ideal, generated)
    return abs(ov) ** 2 / (n2g * n2i)


def fidelity_f1(f0: float, e: ErrorModel, k_photons: int) -> float:
    """Spin-error-corrected fidelity alpha^K * F0."""
    return alpha(e) ** k_photons * f0


def success_probability(generated: tensornet.SequentialMPS, e: ErrorModel) -> float:
    """Probability of collecting every photon in one run,
    eta^K <state|state> for the unnormalized generated state."""
    return e.eta ** len(generated) * generated.norm_squared()


def generation_rate(p_success: float, k_photons: int, t_cycle_ns: float) -> float:
    """Completed cluster states per second at one photon per cycle."""
    return p_success / (k_photons * t_cycle_ns * 1e-9)


def fit_beta(points) -> FitResult:
    """Least-squares fit of log-fidelity against photon number.

    ``points`` is a sequence of (k_photons, fidelity) pairs with positive
    fidelities; returns beta = exp(slope) and amplitude = exp(intercept).
    """
    points = list(points)
    if len(points) < 3:
        raise ValueError("need at least 3 points to fit a scaling factor")
    ks = np.array([float(k) for k, _ in points])
    fs = np.array([float(f) for _, f in points])
    if np.any(fs <= 0.0):
        raise ValueError("fidelities must be positive for a log-domain fit")
    slope, intercept = np.polyfit(ks, np.log(fs), 1)
    resid = np.log(fs) - (slope * ks + intercept)
    return FitResult(math.exp(slope), math.exp(intercept),
                     float(np.sqrt(np.mean(resid**2))))


def fidelity_curve(dims: lattice.LatticeDims, edge_gates, error_model=None,
                   alpha_value=None) -> list:
    """Per-photon-count fidelity reports in one sequential pass.

    Builds the generated and the ideal chain side by side and contracts
    their overlap through a shared transfer environment, so the K-photon
    numbers for every K up to ``dims.photon_count`` cost a single sweep.
    """
    if alpha_value is None:
        alpha_value = alpha(error_model) if error_model is not None else 1.0
    eta = error_model.eta if error_model is not None else 1.0
    ideal_gates = tensornet.ideal_edge_gates(dims)
    gen = tensornet.WindowBuilder()
    ide = tensornet.WindowBuilder()
    env_ig = np.ones((1, 1), dtype=complex)
    env_gg = np.ones((1, 1), dtype=complex)
    env_ii = np.ones((1, 1), dtype=complex)
    reports = []
    for k, batch in enumerate(lattice.entangling_order(dims), start=1):
        gen.inject()
        ide.inject()
        for e in batch:
            gen.apply_edge(e.earlier, e.later, edge_gates[e.offset])
            ide.apply_edge(e.earlier, e.later, ideal_gates[e.offset])
        done_g = gen.retire_through(k - dims.max_offset)
        done_i = ide.retire_through(k - dims.max_offset)
        for tg, ti in zip(done_g, done_i):
            env_ig = tensornet.advance_environment(env_ig, ti, tg)
            env_gg = tensornet.advance_environment(env_gg, tg, tg)
            env_ii = tensornet.advance_environment(env_ii, ti, ti)
        wg = gen.window_block()
        wi = ide.window_block()
        ov = np.vdot(wi, env_ig @ wg)
        n2g = np.vdot(wg, env_gg @ wg).real
        n2i = np.vdot(wi, env_ii @ wi).real
        f0 = abs(ov) ** 2 / (n2g * n2i)
        reports.append(FidelityReport(k, float(f0),
                                      float(alpha_value ** k * f0),
                                      float(eta ** k * n2g)))
    return reports


def scaling_points(reports, dims: lattice.LatticeDims):
    """(K, F1) pairs for the beta fit, dropping the first ``max_offset``
    photons where the boundary transient distorts the slope."""
    skip = dims.max_offset
    return [(r.k_photons, r.f1) for r in reports if r.k_photons > skip]


def magnetic_spin_photon_gate(params: cavity.CavityParams) -> np.ndarray:
    return gates.u_rf(cavity.spin_dependent_reflection(params))


def magnetic_gate_from_point(c_up: float, b_field: float, kappa: float,
                             g_e: float, g_h: float) -> np.ndarray:
    """Reflection gate at a (resonant cooperativity, magnetic field) grid
    point: the field fixes the Zeeman detuning, which maps the resonant
    cooperativity onto the complex off-resonant one."""
    delta = (g_e + g_h) * cavity.MU_B_OVER_HBAR * b_field
    c_down = c_up / (1.0 + 2j * delta / kappa)
    pair = cavity.ReflectionPair((c_up - 1.0) / (c_up + 1.0),
                                 (c_down - 1.0) / (c_down + 1.0))
    return gates.u_rf(pair)


def chiral_spin_photon_gate(cooperativity: float, kappa=None) -> np.ndarray:
    """Phase-corrected chiral reflection gate at the pi/2 working point."""
    params = cavity.ChiralParams(cooperativity=cooperativity) if kappa is None \
        else cavity.ChiralParams(cooperativity=cooperativity, kappa=kappa)
    _, r1, _ = cavity.chiral_reflection(params)
    return gates.chiral_phase_fix(gates.u_cr(r1))


def _fit_cell(dims, spin_photon_gate, alpha_value):
    edge_gates = tensornet.photon_edge_gates(spin_photon_gate, dims)
    reports = fidelity_curve(dims, edge_gates, alpha_value=alpha_value)
    return fit_beta(scaling_points(reports, dims))


def sweep_beta(axis1_values, axis2_values, model: str, dims: lattice.LatticeDims,
               e: ErrorModel | None = None,
               base: cavity.CavityParams | None = None) -> list:
    """Beta over a 2D parameter grid.

    ``model="magnetic"``: axis1 is the resonant cooperativity, axis2 the
    magnetic field in tesla; the spin-error factor comes from ``e`` and
    kappa and the Lande factors from ``base``.  ``model="chiral"``: axis1
    is the cooperativity, axis2 the combined per-photon spin error, which
    replaces the error model.  Invalid physics at a grid point is recorded
    as an error cell and the sweep continues.
    """
    rows = []
    for a1 in axis1_values:
        for a2 in axis2_values:
            rows.append(sweep_cell(float(a1), float(a2), model, dims, e, base))
    return rows


def sweep_cell(a1: float, a2: float, model: str, dims: lattice.LatticeDims,
               e: ErrorModel | None = None,
               base: cavity.CavityParams | None = None) -> SweepCell:
    try:
        if model == "magnetic":
            if base is None:
                base = cavity.quantum_dot_params(0.0)
            if e is None:
                raise ValueError("magnetic sweep needs an error model")
            gate = magnetic_gate_from_point(a1, a2, base.kappa, base.g_e, base.g_h)
            fit = _fit_cell(dims, gate, alpha(e))
        elif model == "chiral":
            spin_error = a2
            if not 0.0 <= spin_error < 1.0:
                raise ValueError("spin error must lie in [0, 1)")
            gate = chiral_spin_photon_gate(a1)
            fit = _fit_cell(dims, gate, 1.0 - spin_error)
        else:
            raise ValueError(f"unknown sweep model {model!r}")
    except (ValueError, ArithmeticError) as exc:
        return SweepCell(a1, a2, float("nan"), float("nan"), float("nan"),
                         f"error: {exc}")
    return SweepCell(a1, a2, fit.beta, fit.amplitude, fit.residual, "ok")
