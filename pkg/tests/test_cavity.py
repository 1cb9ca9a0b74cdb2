import math

import numpy as np
import pytest

from photoncluster import cavity


QD = cavity.quantum_dot_params


def test_resonant_cooperativity_quantum_dot():
    # 4 g^2/(gamma kappa) with g/2pi=10, kappa/2pi=0.3, gamma/2pi=40
    assert cavity.cooperativity_resonant(QD()) == pytest.approx(400.0 / 12.0, rel=1e-12)


def test_resonant_cooperativity_zero_coupling():
    p = cavity.CavityParams(0.0, 1.0, 2.0)
    assert cavity.cooperativity_resonant(p) == 0.0


def test_resonant_cooperativity_symmetry_point():
    p = cavity.CavityParams(g=1.0, kappa=2.0, gamma=2.0)  # 4 g^2 = gamma kappa
    assert cavity.cooperativity_resonant(p) == pytest.approx(1.0, rel=1e-14)


def test_zeeman_detuning_values():
    assert cavity.zeeman_detuning(QD(0.0)) == 0.0
    # (g_e + g_h) * 13.996 GHz/T * B, quoted over 2pi
    d12 = cavity.zeeman_detuning(QD(12.0)) / cavity.TWO_PI
    assert d12 == pytest.approx(0.64 * 12.0 * 13.996, rel=1e-12)
    assert d12 == pytest.approx(107.5, abs=0.05)
    d6 = cavity.zeeman_detuning(QD(6.0)) / cavity.TWO_PI
    assert d6 == pytest.approx(0.64 * 6.0 * 13.996, rel=1e-12)
    assert d6 == pytest.approx(53.7, abs=0.05)


def test_offres_cooperativity_resonance_limit():
    p = QD(0.0)
    assert cavity.cooperativity_offres(p) == pytest.approx(
        cavity.cooperativity_resonant(p), rel=1e-14)


def test_offres_cooperativity_quantum_dot_12t():
    c = cavity.cooperativity_offres(QD(12.0))
    ratio = 2.0 * cavity.zeeman_detuning(QD(12.0)) / QD().kappa
    expected = (400.0 / 12.0) / (1.0 + 1j * ratio)
    assert c == pytest.approx(expected, rel=1e-12)
    assert abs(c) == pytest.approx(0.0465, abs=2e-4)


def test_offres_cooperativity_far_detuned_limit():
    p = cavity.CavityParams.from_ghz(10.0, 0.3, 40.0, 1e9, 0.43, 0.21)
    assert abs(cavity.cooperativity_offres(p)) < 1e-6


def test_offres_formulas_agree_on_random_draws():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        p = cavity.CavityParams(
            g=rng.uniform(0.1, 100.0), kappa=rng.uniform(0.01, 50.0),
            gamma=rng.uniform(0.01, 300.0), b_field=rng.uniform(0.0, 20.0),
            g_e=rng.uniform(0.0, 2.0), g_h=rng.uniform(0.0, 2.0))
        direct = 4.0 * p.g**2 / (p.gamma * (p.kappa + 2j * cavity.zeeman_detuning(p)))
        via_ratio = cavity.cooperativity_resonant(p) / (
            1.0 + 2j * cavity.zeeman_detuning(p) / p.kappa)
        assert abs(direct - via_ratio) <= 1e-12 * abs(direct)
        assert cavity.cooperativity_offres(p) == pytest.approx(direct, rel=1e-12)


def test_spin_dependent_reflection_ideal_limits():
    # large cooperativity with a detuning that dominates it
    p = cavity.CavityParams.from_ghz(1e3, 0.3, 40.0, 1e10, 0.43, 0.21)
    r = cavity.spin_dependent_reflection(p)
    assert r.r_up == pytest.approx(1.0, abs=1e-4)
    assert r.r_down == pytest.approx(-1.0, abs=1e-4)


def test_spin_dependent_reflection_zero_at_unit_cooperativity():
    p = cavity.CavityParams(g=1.0, kappa=2.0, gamma=2.0)
    assert cavity.spin_dependent_reflection(p).r_up == pytest.approx(0.0, abs=1e-14)


def test_spin_dependent_reflection_quantum_dot_12t():
    r = cavity.spin_dependent_reflection(QD(12.0))
    assert r.r_up == pytest.approx(97.0 / 103.0, rel=1e-12)
    c_down = cavity.cooperativity_offres(QD(12.0))
    assert r.r_down == pytest.approx((c_down - 1.0) / (c_down + 1.0), rel=1e-12)
    assert 0.092 < abs(1.0 + r.r_down) < 0.094
    assert abs(r.r_down) <= 1.0


def test_reflection_pair_rejects_gain():
    with pytest.raises(ValueError):
        cavity.ReflectionPair(1.5, -1.0)


def test_general_reflection_empty_cavity_on_resonance():
    p = cavity.CavityParams(g=0.0, kappa=1.0, gamma=2.0)
    assert cavity.reflection_general(0.0, 0.0, 5.0e6, p) == pytest.approx(-1.0, abs=1e-5)
    assert cavity.reflection_general(0.0, 0.0, 0.0, p) == pytest.approx(-1.0, rel=1e-14)


def test_general_reflection_matches_spin_up_value():
    p = QD(12.0)
    r = cavity.reflection_general(0.0, 0.0, 0.0, p)
    assert r == pytest.approx(cavity.spin_dependent_reflection(p).r_up, rel=1e-12)


def test_general_reflection_detuned_formula_identity():
    # on a resonant cavity the reflection equals (C_d - 1)/(C_d + 1) with
    # the complex detuned cooperativity, for any detuning
    rng = np.random.default_rng(11)
    for _ in range(300):
        p = cavity.CavityParams(
            g=rng.uniform(0.1, 50.0), kappa=rng.uniform(0.01, 20.0),
            gamma=rng.uniform(0.01, 200.0))
        delta = rng.uniform(-500.0, 500.0)
        c_delta = 4.0 * p.g**2 / (p.gamma * (p.kappa + 2j * delta))
        expected = (c_delta - 1.0) / (c_delta + 1.0)
        got = cavity.reflection_general(0.0, 0.0, delta, p)
        assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))


def test_general_reflection_passive_for_random_params():
    rng = np.random.default_rng(23)
    for _ in range(1000):
        p = cavity.CavityParams(
            g=rng.uniform(0.0, 50.0), kappa=rng.uniform(0.01, 20.0),
            gamma=rng.uniform(0.01, 200.0))
        r = cavity.reflection_general(rng.uniform(-100, 100), rng.uniform(-100, 100),
                                      rng.uniform(-100, 100), p)
        assert abs(r) <= 1.0 + 1e-12


def test_chiral_reflection_limits_and_values():
    r0, r1, delta = cavity.chiral_reflection(cavity.ChiralParams(cooperativity=1e12))
    assert r0 == -1.0
    assert r1 == pytest.approx(-1j, abs=1e-6)

    r0, r1, delta = cavity.chiral_reflection(cavity.ChiralParams(cooperativity=1.0))
    assert r1 == 0.0 and delta == 0.0

    _, r1, _ = cavity.chiral_reflection(cavity.ChiralParams(cooperativity=100.0))
    assert r1 == pytest.approx(-1j * math.sqrt(99.0 / 101.0), rel=1e-12)


def test_chiral_reflection_rejects_weak_coupling():
    with pytest.raises(ValueError):
        cavity.chiral_reflection(cavity.ChiralParams(cooperativity=0.5))


def test_chiral_closed_form_matches_general_reflection():
    rng = np.random.default_rng(3)
    for _ in range(200):
        kappa = rng.uniform(0.05, 10.0)
        gamma = rng.uniform(0.05, 100.0)
        c = rng.uniform(1.0, 500.0)
        g = math.sqrt(c * gamma * kappa) / 2.0
        chp = cavity.ChiralParams(cooperativity=c, kappa=kappa)
        _, r1, delta_s = cavity.chiral_reflection(chp)
        full = cavity.CavityParams(g=g, kappa=kappa, gamma=gamma)
        direct = cavity.reflection_general(0.0, 0.0, delta_s, full)
        assert abs(direct - r1) <= 1e-12


def test_chiral_params_derive_cooperativity_from_rates():
    p = cavity.ChiralParams(g=1.0, kappa=2.0, gamma=2.0)
    assert p.cooperativity == pytest.approx(1.0, rel=1e-14)


def test_params_validation():
    with pytest.raises(ValueError):
        cavity.CavityParams(g=-1.0, kappa=1.0, gamma=1.0)
    with pytest.raises(ValueError):
        cavity.CavityParams(g=1.0, kappa=0.0, gamma=1.0)
    with pytest.raises(ValueError):
        cavity.CavityParams(g=1.0, kappa=1.0, gamma=1.0, b_field=-2.0)
    with pytest.raises(ValueError):
        cavity.ChiralParams()
