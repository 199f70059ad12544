from __future__ import annotations

import itertools
import math

import numpy as np
import oracles
import pytest

from vbsqc.errors import CannotPush, QubitOutOfRange
from vbsqc.statevec import (
    I2,
    PAULIS,
    H,
    S,
    X,
    Z,
    apply_1q,
    apply_unitary,
    basis_state,
    fidelity_up_to_phase,
    from_amplitudes,
    kron_le,
    plus_state,
    random_state,
    random_unitary,
    tensor,
)
from vbsqc.teleport import (
    CZ_MATRIX,
    PAULI_BITS,
    PHASE_GATE_WIRING,
    ByproductFrame,
    bell_basis_for,
    find_phase_gate_wirings,
    ghz_bases,
    ghz_index,
    phase_gate_byproduct,
    push_pauli,
    same_wiring_class,
    teleport_1q,
    teleport_phase_gate,
)
from vbsqc.vbs import bond_state

BOND = np.array([1, 1, 1, -1]) / 2
HH_CZ = kron_le(H, H) @ CZ_MATRIX


def test_bell_basis_identity():
    basis = bell_basis_for(I2)
    for ket, sig in zip(basis, PAULIS):
        assert np.allclose(ket, oracles.full_op(2, {0: sig}) @ BOND)


def test_bell_basis_hadamard_first_element():
    assert np.allclose(bell_basis_for(H)[0], oracles.full_op(2, {0: oracles.H}) @ BOND)


def test_bell_basis_orthonormal(rng):
    for _ in range(20):
        b = np.array(bell_basis_for(random_unitary(2, rng)))
        assert np.allclose(b.conj() @ b.T, np.eye(4), atol=1e-12)


def test_identity_teleportation():
    out, alpha, _ = teleport_1q(basis_state([0]), 0, I2, outcome=0)
    assert alpha == 0
    assert fidelity_up_to_phase(out, basis_state([0])) == pytest.approx(1.0)


def test_hadamard_teleportation():
    out, _, frame = teleport_1q(basis_state([0]), 0, H, outcome=0)
    assert fidelity_up_to_phase(out, plus_state(1)) == pytest.approx(1.0)
    assert frame == ByproductFrame.identity(1)


def test_every_branch_is_pauli_times_u(rng):
    for _ in range(20):
        u = random_unitary(2, rng)
        psi = random_state(1, rng)
        for a in range(4):
            out, alpha, frame = teleport_1q(psi, 0, u, outcome=a)
            assert alpha == a
            expect = apply_1q(apply_1q(psi, u, 0), PAULIS[a], 0)
            assert fidelity_up_to_phase(out, expect) >= 1 - 1e-10
            assert (frame.x[0], frame.z[0]) == PAULI_BITS[a]


def test_branch_probability_quarter(rng):
    from vbsqc.statevec import measure_in_basis

    for _ in range(10):
        u = random_unitary(2, rng)
        full = tensor(random_state(1, rng), bond_state())
        basis = bell_basis_for(u)
        for a in range(4):
            _, p, _ = measure_in_basis(full, [0, 1], basis, outcome=a)
            assert p == pytest.approx(0.25, abs=1e-10)


def test_process_reconstruction(rng):
    """Each branch enacts sigma_a U on a tomographically complete input set."""
    r2 = 1 / math.sqrt(2)
    inputs = [[1, 0], [0, 1], [r2, r2], [r2, 1j * r2]]
    u = random_unitary(2, rng)
    for a in range(4):
        op = PAULIS[a] @ u
        outs = []
        for v in inputs:
            out, _, _ = teleport_1q(from_amplitudes(v), 0, u, outcome=a)
            outs.append(out.amps)
        # outputs agree with op up to one common phase
        ref = [op @ np.array(v) for v in inputs]
        phases = [np.vdot(r, o) for r, o in zip(ref, outs)]
        assert all(abs(abs(p) - 1) < 1e-10 for p in phases)
        # the |+> and |+i> inputs pin the relative phase between |0> and |1> images
        assert np.allclose(outs[2], (outs[0] + outs[1]) * r2 * phases[2] / phases[0], atol=1e-10)
        assert np.allclose(outs[3], (outs[0] + 1j * outs[1]) * r2 * phases[3] / phases[0], atol=1e-10)


def test_teleport_on_wire_of_register(rng):
    psi = random_state(3, rng)
    u = random_unitary(2, rng)
    out, a, frame = teleport_1q(psi, 1, u, rng=rng)
    assert fidelity_up_to_phase(frame.undo(out), apply_1q(psi, u, 1)) >= 1 - 1e-10


def test_adaptive_frame_absorbs_pending_byproduct(rng):
    psi = random_state(1, rng)
    u, v = random_unitary(2, rng), random_unitary(2, rng)
    out, _, frame = teleport_1q(psi, 0, u, outcome=3)
    out, _, frame = teleport_1q(out, 0, v, outcome=1, frame=frame)
    assert fidelity_up_to_phase(frame.undo(out), apply_1q(apply_1q(psi, u, 0), v, 0)) >= 1 - 1e-10


def test_unadapted_clifford_pushes_frame(rng):
    psi = random_state(1, rng)
    out, _, frame = teleport_1q(psi, 0, I2, outcome=1)
    out, _, frame = teleport_1q(out, 0, H, outcome=2, frame=frame, adapt=False)
    assert fidelity_up_to_phase(frame.undo(out), apply_1q(psi, H, 0)) >= 1 - 1e-10
    with pytest.raises(CannotPush):
        teleport_1q(out, 0, random_unitary(2, rng), outcome=0, frame=frame, adapt=False)


def test_wire_out_of_range():
    with pytest.raises(QubitOutOfRange):
        teleport_1q(plus_state(1), 1, I2, outcome=0)


def test_ghz_first_element():
    basis, _ = ghz_bases()
    expect = np.zeros(8)
    expect[0] = expect[7] = 1 / math.sqrt(2)
    assert np.allclose(basis[ghz_index(0, 0, 0)], expect)


def test_ghz_orthonormal():
    for basis in ghz_bases():
        b = np.array(basis)
        assert np.allclose(b.conj() @ b.T, np.eye(8), atol=1e-12)


def test_ghz_closed_under_xx_relabel():
    basis, _ = ghz_bases()
    xx1 = oracles.full_op(3, {0: oracles.X, 1: oracles.X})
    b = np.array(basis)
    images = [xx1 @ k for k in basis]
    overlaps = np.abs(np.array(images).conj() @ b.T)
    assert np.allclose(np.sort(overlaps, axis=1)[:, -1], 1)
    assert sorted(np.argmax(overlaps, axis=1)) == list(range(8))


def test_phase_gate_on_00():
    out, (o1, o2), frame = teleport_phase_gate(basis_state([0, 0]), 0, 1, outcomes=(0, 0))
    assert fidelity_up_to_phase(frame.undo(out), plus_state(2)) == pytest.approx(1.0)


def test_phase_gate_on_11():
    out, _, frame = teleport_phase_gate(basis_state([1, 1]), 0, 1, outcomes=(0, 0))
    minus = np.array([1, -1]) / math.sqrt(2)
    assert fidelity_up_to_phase(frame.undo(out), from_amplitudes(np.kron(minus, minus))) == pytest.approx(1.0)


def test_phase_gate_all_branches(rng):
    for _ in range(3):
        psi = random_state(2, rng)
        ideal = apply_unitary(psi, HH_CZ, [0, 1])
        for o1, o2 in itertools.product(range(8), repeat=2):
            out, _, frame = teleport_phase_gate(psi, 0, 1, outcomes=(o1, o2))
            assert fidelity_up_to_phase(out, frame.apply(ideal)) >= 1 - 1e-10
            (x1, z1), (x2, z2) = phase_gate_byproduct(o1, o2)
            assert frame.x == (x1, x2) and frame.z == (z1, z2)


def test_phase_gate_on_register_wires(rng):
    psi = random_state(4, rng)
    out, _, frame = teleport_phase_gate(psi, 3, 2, rng=rng)
    ideal = apply_unitary(psi, HH_CZ, [3, 2])
    assert fidelity_up_to_phase(frame.undo(out), ideal) >= 1 - 1e-10


def test_phase_gate_pushes_prior_frame(rng):
    psi = random_state(2, rng)
    prior = ByproductFrame((1, 0), (1, 1))
    out, _, frame = teleport_phase_gate(prior.apply(psi), 0, 1, outcomes=(5, 2), frame=prior)
    assert fidelity_up_to_phase(frame.undo(out), apply_unitary(psi, HH_CZ, [0, 1])) >= 1 - 1e-10


def test_push_through_cz():
    f = ByproductFrame((1, 0), (0, 0))
    assert push_pauli(f, ("cz", 0, 1)) == ByproductFrame((1, 0), (0, 1))


def test_push_zero_frame_stays_zero(rng):
    zero = ByproductFrame.identity(2)
    for gate in [("cz", 0, 1), ("h", 0), ("s", 1), ("1q", 0, random_unitary(2, rng))]:
        assert push_pauli(zero, gate) == zero


def test_push_through_h():
    assert push_pauli(ByproductFrame((1,), (0,)), ("h", 0)) == ByproductFrame((0,), (1,))


@pytest.mark.parametrize("x1, z1, x2, z2", list(itertools.product((0, 1), repeat=4)))
def test_push_identities_as_matrices(x1, z1, x2, z2):
    f = ByproductFrame((x1, x2), (z1, z2))
    ops = lambda fr: kron_le(fr.operator(0), fr.operator(1))
    g = push_pauli(f, ("cz", 0, 1))
    lhs, rhs = CZ_MATRIX @ ops(f), ops(g) @ CZ_MATRIX
    phase = np.vdot(rhs.ravel(), lhs.ravel()) / 4
    assert abs(abs(phase) - 1) < 1e-12 and np.allclose(lhs, phase * rhs, atol=1e-12)
    for u in (H, S):
        g = push_pauli(f, ("1q", 0, u))
        lhs, rhs = u @ f.operator(0), g.operator(0) @ u
        phase = np.vdot(rhs.ravel(), lhs.ravel()) / 2
        assert np.allclose(lhs, phase * rhs, atol=1e-12)


def test_frame_compose_is_xor():
    a = ByproductFrame((1, 0), (1, 1))
    b = ByproductFrame((1, 1), (0, 1))
    assert a.compose(b) == ByproductFrame((0, 1), (1, 0))
    assert np.allclose(ByproductFrame((1,), (1,)).operator(0), X @ Z)


@pytest.mark.slow
def test_frozen_wiring_is_found_by_search():
    found = find_phase_gate_wirings(np.random.default_rng(7))
    assert found
    assert any(same_wiring_class(w, PHASE_GATE_WIRING) for w in found)
