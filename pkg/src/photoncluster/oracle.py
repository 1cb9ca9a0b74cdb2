"""Dense state-vector reference for every small-system claim.

Simulates the sequential ancilla circuits directly on full amplitude
vectors, builds graph states by definition, and verifies stabilizers.
Deliberately simple: gates act by index masking on the amplitude vector,
no matrices larger than 4x4 are ever formed.

Qubit ordering is big-endian: qubit 0 (the ancilla in protocol runs) is
the most significant bit; photons are qubits 1..K.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gates, lattice
from .errors import ResourceLimitError

MAX_QUBITS = 14


def _check_size(n):
    if n > MAX_QUBITS:
        raise ResourceLimitError(f"dense oracle capped at {MAX_QUBITS} qubits, got {n}")


def plus_state(n: int) -> np.ndarray:
    _check_size(n)
    return np.full(2**n, 2.0 ** (-n / 2.0), dtype=complex)


def apply_gate1(state, n, q, gate):
    """Apply a 2x2 gate to qubit q by index masking."""
    mask = 1 << (n - 1 - q)
    idx = np.arange(state.size)
    lo = idx[(idx & mask) == 0]
    hi = lo | mask
    out = np.empty_like(state)
    a0, a1 = state[lo], state[hi]
    out[lo] = gate[0, 0] * a0 + gate[0, 1] * a1
    out[hi] = gate[1, 0] * a0 + gate[1, 1] * a1
    return out


def apply_gate2(state, n, qa, qb, gate):
    """Apply a 4x4 gate to qubits (qa, qb); qa is the gate's first slot."""
    ma = 1 << (n - 1 - qa)
    mb = 1 << (n - 1 - qb)
    idx = np.arange(state.size)
    base = idx[((idx & ma) == 0) & ((idx & mb) == 0)]
    groups = (base, base | mb, base | ma, base | ma | mb)
    cols = [state[g] for g in groups]
    out = np.empty_like(state)
    for row in range(4):
        out[groups[row]] = (gate[row, 0] * cols[0] + gate[row, 1] * cols[1]
                            + gate[row, 2] * cols[2] + gate[row, 3] * cols[3])
    return out


def apply_pauli_z(state, n, q):
    signs = 1.0 - 2.0 * ((np.arange(state.size) >> (n - 1 - q)) & 1)
    return state * signs


def graph_state(edges, k: int) -> np.ndarray:
    """Graph state on k photons: CPHASE along every edge applied to |+>^k."""
    _check_size(k)
    state = plus_state(k)
    idx = np.arange(state.size)
    for e in edges:
        ba = k - 1 - (e.earlier - 1)
        bb = k - 1 - (e.later - 1)
        both = ((idx >> ba) & 1) & ((idx >> bb) & 1)
        state = np.where(both == 1, -state, state)
    return state


def run_protocol_circuit(dims: lattice.LatticeDims, spin_photon_gate,
                         mode="circuit_form") -> np.ndarray:
    """Run the sequential ancilla protocol densely on K+1 qubits.

    Each cycle k reflects the returning photons (longest offset first) and
    photon k off the cavity, applying ``spin_photon_gate`` photon-first to
    (photon, ancilla).  In ``circuit_form`` the cycle ends with Hadamards
    on ancilla and photon; in ``cphase_form`` it ends with an
    ancilla-photon swap instead.  The two forms agree exactly for an ideal
    CPHASE gate.
    """
    if mode not in ("circuit_form", "cphase_form"):
        raise ValueError(f"unknown mode {mode!r}")
    k_photons = dims.photon_count
    n = k_photons + 1
    _check_size(n)
    gate = np.asarray(spin_photon_gate, dtype=complex)
    state = plus_state(n)
    swap = gates.standard_gate("swap")
    for k in range(1, k_photons + 1):
        for o in reversed(dims.offsets[1:]):
            if k - o >= 1:
                state = apply_gate2(state, n, k - o, 0, gate)
        state = apply_gate2(state, n, k, 0, gate)
        if mode == "circuit_form":
            state = apply_gate1(state, n, 0, gates.HADAMARD)
            state = apply_gate1(state, n, k, gates.HADAMARD)
        else:
            state = apply_gate2(state, n, 0, k, swap)
    return state


def photon_state_from_circuit(dims: lattice.LatticeDims, spin_photon_gate) -> np.ndarray:
    """Photon-only output state of the dense protocol run.

    After the last cycle the ancilla is tied to photon K by one leftover
    nearest-neighbor gate.  Undoing that gate leaves the ancilla in |+> and
    factored out; the remaining K-qubit amplitudes are returned.  With an
    ideal CPHASE this is exactly the helical-chain graph state.
    """
    psi = run_protocol_circuit(dims, spin_photon_gate, "circuit_form")
    k_photons = dims.photon_count
    n = k_photons + 1
    tail = gates.nearest_neighbor_gate(spin_photon_gate)
    psi = apply_gate2(psi, n, k_photons, 0, np.linalg.inv(tail))
    half = psi.size // 2
    anc0, anc1 = psi[:half], psi[half:]
    leak = np.linalg.norm(anc0 - anc1)
    if leak > 1e-9 * max(np.linalg.norm(psi), 1e-300):
        raise RuntimeError(f"ancilla failed to factor out (residual {leak:.3e})")
    return anc0 * np.sqrt(2.0)


def dense_edge_network(dims: lattice.LatticeDims, edge_gates) -> np.ndarray:
    """Photon-photon gate network applied densely to |+>^K.

    Uses the same per-photon edge order as the sequential tensor engine,
    so the two must agree to machine precision; this pins down the dense
    backend as the reference for the windowed MPS contraction.
    """
    k_photons = dims.photon_count
    _check_size(k_photons)
    state = plus_state(k_photons)
    for batch in lattice.entangling_order(dims):
        for e in batch:
            g = np.asarray(edge_gates[e.offset], dtype=complex)
            state = apply_gate2(state, k_photons, e.earlier - 1, e.later - 1, g)
    return state


def overlap_fidelity(ideal, generated) -> float:
    """|<ideal|generated>|^2 / (<generated|generated> <ideal|ideal>)."""
    n2g = np.vdot(generated, generated).real
    n2i = np.vdot(ideal, ideal).real
    if n2g <= 0.0:
        raise ValueError("generated state has zero norm")
    return abs(np.vdot(ideal, generated)) ** 2 / (n2g * n2i)


def fidelity_dense(dims: lattice.LatticeDims, spin_photon_gate) -> float:
    """Brute-force gate-error fidelity: dense protocol run against the
    graph state on the chain edges."""
    generated = photon_state_from_circuit(dims, spin_photon_gate)
    ideal = graph_state(lattice.chain_edges(dims), dims.photon_count)
    return overlap_fidelity(ideal, generated)


def stabilizer_check(state, edges, k: int):
    """Expectation of every vertex stabilizer X_a prod_{b~a} Z_b.

    All +1 (within numerical noise) exactly when ``state`` is the graph
    state on ``edges``.
    """
    nbrs = {a: [] for a in range(1, k + 1)}
    for e in edges:
        nbrs[e.earlier].append(e.later)
        nbrs[e.later].append(e.earlier)
    idx = np.arange(state.size)
    values = []
    for a in range(1, k + 1):
        ma = 1 << (k - 1 - (a - 1))
        parity = np.zeros(state.size, dtype=np.int64)
        for b in nbrs[a]:
            parity ^= (idx >> (k - 1 - (b - 1))) & 1
        signs = 1.0 - 2.0 * parity
        flipped = state[idx ^ ma]
        values.append(complex(np.vdot(state, signs * flipped)).real)
    return values


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_relation_hadamard_swap(trials=100, seed=7):
    """Swapping the ancilla with a |+> photon equals Hadamards on both
    after the entangling gate, for any ancilla-environment state.

    Verified on random states of (ancilla x 2-qubit environment) with the
    photon adjoined in |+>, plus a negative control with the photon in |0>
    where the relation must fail.
    """
    rng = np.random.default_rng(seed)
    n = 4  # ancilla, photon, 2-qubit environment
    swap = gates.standard_gate("swap")
    cphase = gates.CPHASE

    def both_sides(state):
        lhs = apply_gate2(state, n, 0, 1, cphase)
        lhs = apply_gate2(lhs, n, 0, 1, swap)
        rhs = apply_gate2(state, n, 0, 1, cphase)
        rhs = apply_gate1(rhs, n, 0, gates.HADAMARD)
        rhs = apply_gate1(rhs, n, 1, gates.HADAMARD)
        return np.linalg.norm(lhs - rhs)

    worst = 0.0
    for _ in range(trials):
        env = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        env /= np.linalg.norm(env)
        # adjoin the photon as qubit 1 in |+>
        full = np.einsum("aef,p->apef", env.reshape(2, 2, 2),
                         np.array([1.0, 1.0]) / np.sqrt(2.0)).reshape(-1)
        worst = max(worst, both_sides(full.astype(complex)))
    passed = worst < 1e-12

    env = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    env /= np.linalg.norm(env)
    control = np.einsum("aef,p->apef", env.reshape(2, 2, 2),
                        np.array([1.0, 0.0])).reshape(-1).astype(complex)
    control_dev = both_sides(control)
    return CheckResult(
        "hadamard-swap relation",
        passed and control_dev > 1e-3,
        f"max deviation {worst:.2e} over {trials} trials; "
        f"|0>-photon control deviates by {control_dev:.2e}")


def check_photon_network_reduction(dims: lattice.LatticeDims, spin_photon_gate,
                                   trials=20, seed=11):
    """One protocol cycle equals its swap-free photon-photon form.

    Left side: reflections of the returning photons and photon k followed
    by the cycle Hadamards.  Right side: the conjugated nearest-neighbor
    gate on (photon k, ancilla) after photon-photon gates, times a swap.
    Equality requires photon k to start in |+>.
    """
    rng = np.random.default_rng(seed)
    k_photons = dims.photon_count
    n = k_photons + 1
    _check_size(n)
    k = k_photons  # cycle with every offset present when possible
    gate = np.asarray(spin_photon_gate, dtype=complex)
    tail = gates.nearest_neighbor_gate(gate)
    swap = gates.standard_gate("swap")
    others = [o for o in reversed(dims.offsets[1:]) if k - o >= 1]

    worst = 0.0
    for _ in range(trials):
        rest = rng.standard_normal(2 ** (n - 1)) + 1j * rng.standard_normal(2 ** (n - 1))
        rest /= np.linalg.norm(rest)
        # photon k sits at qubit index k; adjoin it in |+>
        rest = rest.reshape(2 ** k, 2 ** (n - 1 - k))
        state = np.einsum("ab,p->apb", rest, np.array([1.0, 1.0]) / np.sqrt(2.0))
        state = state.reshape(-1).astype(complex)

        lhs = state
        for o in others:
            lhs = apply_gate2(lhs, n, k - o, 0, gate)
        lhs = apply_gate2(lhs, n, k, 0, gate)
        lhs = apply_gate1(lhs, n, 0, gates.HADAMARD)
        lhs = apply_gate1(lhs, n, k, gates.HADAMARD)

        rhs = apply_gate2(state, n, 0, k, swap)
        for o in others:
            rhs = apply_gate2(rhs, n, k - o, k, gate)
        rhs = apply_gate2(rhs, n, k, 0, tail)
        worst = max(worst, np.linalg.norm(lhs - rhs))
    return CheckResult(
        f"photon-network reduction dims={dims.dims}",
        worst < 1e-12,
        f"max state deviation {worst:.2e} over {trials} trials")


def _form_equivalence(dims):
    a = run_protocol_circuit(dims, gates.CPHASE, "circuit_form")
    b = run_protocol_circuit(dims, gates.CPHASE, "cphase_form")
    fid = overlap_fidelity(a, b)
    return CheckResult(
        f"circuit vs swap form dims={dims.dims}",
        fid >= 1.0 - 1e-12,
        f"fidelity 1 - {max(0.0, 1.0 - fid):.2e}")


def _photons_match_graph(dims):
    photons = photon_state_from_circuit(dims, gates.CPHASE)
    ref = graph_state(lattice.chain_edges(dims), dims.photon_count)
    dev = np.max(np.abs(photons - ref))
    return CheckResult(
        f"ideal photons vs graph state dims={dims.dims}",
        dev < 1e-12,
        f"max amplitude deviation {dev:.2e}")


def _stabilizers_and_errors(dims):
    k = dims.photon_count
    edges = lattice.chain_edges(dims)
    state = photon_state_from_circuit(dims, gates.CPHASE)
    vals = stabilizer_check(state, edges, k)
    ok = all(abs(v - 1.0) < 1e-10 for v in vals)
    # a single phase flip moves the state to an orthogonal graph state and
    # flips exactly the stabilizer anchored on the flipped photon
    target = (k + 1) // 2
    flipped = apply_pauli_z(state, k, target - 1)
    overlap = abs(np.vdot(state, flipped))
    vals_f = stabilizer_check(flipped, edges, k)
    flipped_set = {a + 1 for a, v in enumerate(vals_f) if v < 0}
    ok = ok and overlap < 1e-12 and flipped_set == {target}
    ok = ok and all(abs(abs(v) - 1.0) < 1e-10 for v in vals_f)
    return CheckResult(
        f"stabilizers dims={dims.dims}",
        ok,
        f"clean spread {max(abs(v - 1.0) for v in vals):.2e}; "
        f"Z on photon {target}: overlap {overlap:.2e}, flipped {sorted(flipped_set)}")


def _end_to_end_network(dims, spin_photon_gate):
    from . import tensornet  # deferred: oracle is otherwise independent
    dense = photon_state_from_circuit(dims, spin_photon_gate)
    edge_gates = tensornet.photon_edge_gates(spin_photon_gate, dims)
    mps = tensornet.build_state(dims, edge_gates)
    dev = np.max(np.abs(mps.to_dense() - dense))
    return CheckResult(
        f"tensor network vs dense protocol dims={dims.dims}",
        dev < 1e-10,
        f"max amplitude deviation {dev:.2e}")


def identity_suite(spin_photon_gate=None):
    """Full cross-validation table: circuit identities, graph-state and
    stabilizer checks, the photon-network reduction, and an end-to-end
    imperfect-gate comparison against the tensor engine."""
    if spin_photon_gate is None:
        from .cavity import quantum_dot_params, spin_dependent_reflection
        spin_photon_gate = gates.u_rf(spin_dependent_reflection(quantum_dot_params(12.0)))
    results = []
    all_dims = [lattice.LatticeDims((6,)), lattice.LatticeDims((2, 3)),
                lattice.LatticeDims((3, 2)), lattice.LatticeDims((2, 2, 2)),
                lattice.LatticeDims((2, 2, 3))]
    for dims in all_dims:
        results.append(_form_equivalence(dims))
    for dims in all_dims:
        results.append(_photons_match_graph(dims))
    results.append(check_relation_hadamard_swap())
    results.append(_stabilizers_and_errors(lattice.LatticeDims((2, 2, 2))))
    results.append(check_photon_network_reduction(lattice.LatticeDims((2, 2, 2)),
                                                  spin_photon_gate))
    results.append(_end_to_end_network(lattice.LatticeDims((2, 2, 2)), spin_photon_gate))
    return results
