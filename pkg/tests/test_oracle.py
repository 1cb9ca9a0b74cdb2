import numpy as np
import pytest

from photoncluster import gates, lattice, oracle
from photoncluster.cavity import quantum_dot_params, spin_dependent_reflection
from photoncluster.errors import ResourceLimitError
from photoncluster.lattice import LatticeDims


IMPERFECT = gates.u_rf(spin_dependent_reflection(quantum_dot_params(12.0)))


def test_apply_gate2_matches_matrix_on_two_qubits():
    rng = np.random.default_rng(2)
    state = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert np.allclose(oracle.apply_gate2(state, 2, 0, 1, g), g @ state)
    swapped = gates.standard_gate("swap") @ g @ gates.standard_gate("swap")
    assert np.allclose(oracle.apply_gate2(state, 2, 1, 0, g), swapped @ state)


def test_apply_gate2_embedding_three_qubits():
    rng = np.random.default_rng(3)
    state = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    # acting on (qubit 0, qubit 2) with qubit 1 as spectator, big-endian
    full = np.einsum("xzac,ye->xyzaec", g.reshape(2, 2, 2, 2),
                     np.eye(2)).reshape(8, 8)
    assert np.allclose(oracle.apply_gate2(state, 3, 0, 2, g), full @ state)


def test_plus_state_and_resource_cap():
    s = oracle.plus_state(3)
    assert np.allclose(s, np.full(8, 1 / np.sqrt(8)))
    with pytest.raises(ResourceLimitError):
        oracle.plus_state(15)


def test_graph_state_single_vertex_and_path():
    assert np.allclose(oracle.graph_state([], 1), [1, 1] / np.sqrt(2))
    dims = LatticeDims((3,))
    edges = lattice.chain_edges(dims)
    state = oracle.graph_state(edges, 3)
    assert all(abs(v - 1.0) < 1e-12 for v in oracle.stabilizer_check(state, edges, 3))


def test_graph_state_helical_8_qubit():
    dims = LatticeDims((2, 2, 2))
    edges = lattice.chain_edges(dims)
    state = oracle.graph_state(edges, 8)
    assert np.vdot(state, state).real == pytest.approx(1.0, rel=1e-12)
    vals = oracle.stabilizer_check(state, edges, 8)
    assert all(abs(v - 1.0) < 1e-10 for v in vals)


def test_circuit_and_swap_forms_agree_for_ideal_gate():
    for shape in [(4,), (6,), (2, 3), (3, 2), (2, 2, 2), (2, 2, 3)]:
        dims = LatticeDims(shape)
        a = oracle.run_protocol_circuit(dims, gates.CPHASE, "circuit_form")
        b = oracle.run_protocol_circuit(dims, gates.CPHASE, "cphase_form")
        assert oracle.overlap_fidelity(a, b) >= 1.0 - 1e-12


def test_run_protocol_rejects_bad_mode_and_size():
    dims = LatticeDims((2, 2, 2))
    with pytest.raises(ValueError):
        oracle.run_protocol_circuit(dims, gates.CPHASE, "matrix_form")
    with pytest.raises(ResourceLimitError):
        oracle.run_protocol_circuit(LatticeDims((2, 7)), gates.CPHASE)


def test_ideal_photon_state_is_graph_state():
    for shape in [(5,), (2, 3), (2, 2, 2)]:
        dims = LatticeDims(shape)
        photons = oracle.photon_state_from_circuit(dims, gates.CPHASE)
        ref = oracle.graph_state(lattice.chain_edges(dims), dims.photon_count)
        assert np.max(np.abs(photons - ref)) < 1e-12


def test_norm_bookkeeping_stepwise_product():
    # total norm contraction equals the product of per-gate contraction factors
    dims = LatticeDims((2, 2, 2))
    k = dims.photon_count
    n = k + 1
    state = oracle.plus_state(n)
    factors = []
    for kk in range(1, k + 1):
        for o in reversed(dims.offsets[1:]):
            if kk - o >= 1:
                before = np.vdot(state, state).real
                state = oracle.apply_gate2(state, n, kk - o, 0, IMPERFECT)
                factors.append(np.vdot(state, state).real / before)
        before = np.vdot(state, state).real
        state = oracle.apply_gate2(state, n, kk, 0, IMPERFECT)
        factors.append(np.vdot(state, state).real / before)
        state = oracle.apply_gate1(state, n, 0, gates.HADAMARD)
        state = oracle.apply_gate1(state, n, kk, gates.HADAMARD)
    final = np.vdot(state, state).real
    assert final == pytest.approx(np.prod(factors), rel=1e-12)
    direct = oracle.run_protocol_circuit(dims, IMPERFECT, "circuit_form")
    assert final == pytest.approx(np.vdot(direct, direct).real, rel=1e-12)


def test_hadamard_swap_relation_and_negative_control():
    res = oracle.check_relation_hadamard_swap(trials=100)
    assert res.passed, res.detail


def test_photon_network_reduction_ideal_and_imperfect():
    dims = LatticeDims((2, 2, 2))
    ideal = oracle.check_photon_network_reduction(dims, gates.CPHASE)
    assert ideal.passed, ideal.detail
    imperfect = oracle.check_photon_network_reduction(dims, IMPERFECT)
    assert imperfect.passed, imperfect.detail


def test_photon_network_reduction_small_instance():
    # five qubits: ancilla plus a 2D chain segment
    dims = LatticeDims((2, 2))
    res = oracle.check_photon_network_reduction(
        dims, gates.u_rf(spin_dependent_reflection(quantum_dot_params(6.0))))
    assert res.passed, res.detail


def test_single_z_error_orthogonal_and_flips_anchored_stabilizer():
    dims = LatticeDims((2, 2, 2))
    k = dims.photon_count
    edges = lattice.chain_edges(dims)
    state = oracle.graph_state(edges, k)
    for target in (1, 4, 8):
        flipped = oracle.apply_pauli_z(state, k, target - 1)
        assert abs(np.vdot(state, flipped)) < 1e-12
        vals = oracle.stabilizer_check(flipped, edges, k)
        assert {a + 1 for a, v in enumerate(vals) if v < 0} == {target}


def test_identity_suite_all_pass():
    results = oracle.identity_suite()
    failed = [r for r in results if not r.passed]
    assert not failed, "\n".join(f"{r.name}: {r.detail}" for r in failed)
