import math

import numpy as np
import pytest

from photoncluster import gates, metrics, oracle, tensornet
from photoncluster.cavity import quantum_dot_params, spin_dependent_reflection
from photoncluster.lattice import LatticeDims

SV_MODEL = metrics.ErrorModel(p=0.02, t2=2000.0, t_cycle=5.0, eta=0.8)
IMPERFECT = gates.u_rf(spin_dependent_reflection(quantum_dot_params(12.0)))


def build_pair(dims, gate=IMPERFECT):
    gen = tensornet.build_state(dims, tensornet.photon_edge_gates(gate, dims))
    ideal = tensornet.build_state(dims, tensornet.ideal_edge_gates(dims))
    return ideal, gen


def test_error_model_validation():
    with pytest.raises(ValueError):
        metrics.ErrorModel(p=-0.1, t2=100.0, t_cycle=1.0, eta=0.5)
    with pytest.raises(ValueError):
        metrics.ErrorModel(p=0.1, t2=1.0, t_cycle=5.0, eta=0.5)
    with pytest.raises(ValueError):
        metrics.ErrorModel(p=0.1, t2=100.0, t_cycle=1.0, eta=1.5)


def test_alpha_values():
    assert metrics.alpha(metrics.ErrorModel(0.0, 1e12, 1e-6, 1.0)) == \
        pytest.approx(1.0, abs=1e-12)
    assert metrics.alpha(SV_MODEL) == pytest.approx(0.99 * 0.9975, rel=1e-12)
    assert metrics.alpha(metrics.ErrorModel(0.001, 5000.0, 5.0, 1.0)) == \
        pytest.approx(0.9995 * 0.999, rel=1e-12)


def test_f0_trivial_cases():
    dims = LatticeDims((2, 2, 2))
    ideal, gen = build_pair(dims)
    assert metrics.fidelity_f0(ideal, ideal) == pytest.approx(1.0, rel=1e-12)
    assert metrics.fidelity_f0(ideal, ideal.scaled(0.5)) == pytest.approx(1.0, rel=1e-12)


def test_f0_scale_invariance_random_factors():
    dims = LatticeDims((2, 3))
    ideal, gen = build_pair(dims)
    base = metrics.fidelity_f0(ideal, gen)
    rng = np.random.default_rng(31)
    for _ in range(10):
        c = rng.standard_normal() + 1j * rng.standard_normal()
        if abs(c) < 1e-3:
            continue
        assert metrics.fidelity_f0(ideal, gen.scaled(c)) == \
            pytest.approx(base, rel=1e-10)


def test_f0_unity_iff_proportional():
    dims = LatticeDims((4,))
    ideal, gen = build_pair(dims)
    assert metrics.fidelity_f0(ideal, gen) < 1.0 - 1e-6
    assert metrics.fidelity_f0(ideal, ideal.scaled(2.0j)) == \
        pytest.approx(1.0, rel=1e-12)


def test_f0_matches_dense_oracle():
    dims = LatticeDims((2, 2, 2))
    ideal, gen = build_pair(dims)
    assert metrics.fidelity_f0(ideal, gen) == \
        pytest.approx(oracle.fidelity_dense(dims, IMPERFECT), abs=1e-10)


def test_f0_zero_norm_error():
    dims = LatticeDims((3,))
    ideal, gen = build_pair(dims)
    with pytest.raises(ValueError):
        metrics.fidelity_f0(ideal, gen.scaled(0.0))


def test_f1_values():
    assert metrics.fidelity_f1(0.7, metrics.ErrorModel(0.0, 1e9, 1e-9, 1.0), 10) == \
        pytest.approx(0.7, rel=1e-9)
    expected = (0.99 * 0.9975) ** 8
    assert metrics.fidelity_f1(1.0, SV_MODEL, 8) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(0.9045, abs=5e-4)
    assert metrics.fidelity_f1(0.5, SV_MODEL, 0) == 0.5


def test_success_probability():
    dims = LatticeDims((2, 2, 2))
    ideal, gen = build_pair(dims)
    unit = metrics.ErrorModel(0.0, 1e9, 1.0, 1.0)
    assert metrics.success_probability(ideal, unit) == pytest.approx(1.0, rel=1e-10)
    p = metrics.success_probability(gen, SV_MODEL)
    assert p == pytest.approx(0.8 ** 8 * gen.norm_squared(), rel=1e-12)
    zero = metrics.ErrorModel(0.0, 1e9, 1.0, 0.0)
    assert metrics.success_probability(gen, zero) == 0.0


def test_generation_rate():
    assert metrics.generation_rate(0.103, 8, 5.0) == pytest.approx(2.575e6, rel=1e-3)
    assert metrics.generation_rate(1.0, 1, 1e9) == pytest.approx(1.0, rel=1e-12)
    assert metrics.generation_rate(0.0, 8, 5.0) == 0.0


def test_fit_beta_exact_exponential():
    for beta in (0.9, 0.97, 0.999):
        points = [(k, 0.8 * beta ** k) for k in range(1, 25)]
        fit = metrics.fit_beta(points)
        assert fit.beta == pytest.approx(beta, abs=1e-10)
        assert fit.amplitude == pytest.approx(0.8, abs=1e-10)
        assert fit.residual < 1e-12


def test_fit_beta_validation():
    with pytest.raises(ValueError):
        metrics.fit_beta([(1, 0.9), (2, 0.8)])
    with pytest.raises(ValueError):
        metrics.fit_beta([(1, 0.9), (2, 0.8), (3, -0.1)])


def test_fidelity_curve_matches_separate_builds():
    dims = LatticeDims((2, 2, 3))
    gate_map = tensornet.photon_edge_gates(IMPERFECT, dims)
    reports = metrics.fidelity_curve(dims, gate_map, SV_MODEL)
    assert [r.k_photons for r in reports] == list(range(1, 13))
    for r in [reports[3], reports[7], reports[11]]:
        part = LatticeDims(dims.dims, photon_count=r.k_photons)
        ideal, gen = build_pair(part)
        f0 = metrics.fidelity_f0(ideal, gen)
        assert r.f0 == pytest.approx(f0, abs=1e-12)
        assert r.f1 == pytest.approx(metrics.fidelity_f1(f0, SV_MODEL, r.k_photons),
                                     abs=1e-12)
        assert r.p_success == pytest.approx(
            metrics.success_probability(gen, SV_MODEL), abs=1e-12)
        assert r.f1 <= r.f0


def test_fidelity_curve_chiral_alpha_override():
    dims = LatticeDims((2, 2, 2))
    gate = metrics.chiral_spin_photon_gate(100.0)
    gate_map = tensornet.photon_edge_gates(gate, dims)
    reports = metrics.fidelity_curve(dims, gate_map, alpha_value=0.9985)
    assert reports[-1].f1 == pytest.approx(0.9985 ** 8 * reports[-1].f0, rel=1e-12)


def test_scaling_points_skip_boundary_transient():
    dims = LatticeDims((2, 2, 5))
    gate_map = tensornet.photon_edge_gates(IMPERFECT, dims)
    reports = metrics.fidelity_curve(dims, gate_map, SV_MODEL)
    points = metrics.scaling_points(reports, dims)
    assert points[0][0] == dims.max_offset + 1
    assert len(points) == dims.photon_count - dims.max_offset


def test_stack_sizes_share_beta_but_not_amplitude():
    fits = {}
    e = SV_MODEL
    for stack, layers in [((2, 2), 8), ((2, 3), 6), ((3, 2), 6)]:
        dims = LatticeDims(stack + (layers,))
        gate_map = tensornet.photon_edge_gates(IMPERFECT, dims)
        reports = metrics.fidelity_curve(dims, gate_map, e)
        fits[stack] = metrics.fit_beta(metrics.scaling_points(reports, dims))
    betas = [f.beta for f in fits.values()]
    assert max(betas) - min(betas) < 0.005
    assert abs(fits[(2, 3)].amplitude - fits[(3, 2)].amplitude) > 1e-6


def test_sweep_beta_magnetic_rows_and_error_cells():
    dims = LatticeDims((2, 2, 6))
    rows = metrics.sweep_beta([10.0, 100.0], [6.0, 12.0], "magnetic", dims,
                              SV_MODEL, quantum_dot_params(0.0))
    assert len(rows) == 4
    assert all(r.status == "ok" for r in rows)
    at_c10 = {r.axis2: r.beta for r in rows if r.axis1 == 10.0}
    assert at_c10[12.0] > at_c10[6.0]


def test_sweep_beta_chiral_spot_and_invalid_cell():
    dims = LatticeDims((2, 2, 6))
    rows = metrics.sweep_beta([0.5, 100.0], [0.0015], "chiral", dims)
    bad = [r for r in rows if r.axis1 == 0.5][0]
    assert bad.status.startswith("error")
    assert math.isnan(bad.beta)
    good = [r for r in rows if r.axis1 == 100.0][0]
    assert good.status == "ok"
    assert good.beta == pytest.approx(0.999, abs=1e-3)


def test_sweep_beta_chiral_perfect_limit():
    dims = LatticeDims((2, 2, 6))
    rows = metrics.sweep_beta([1e9], [0.0], "chiral", dims)
    assert rows[0].beta == pytest.approx(1.0, abs=1e-6)
