from __future__ import annotations

import math

import numpy as np
import oracles
import pytest
from conftest import random_graph
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse.linalg import eigsh

from vbsqc.errors import CannotAbsorb, InvalidArity, QubitOutOfRange, TooLarge
from vbsqc.graph import chain, grid, honeycomb, new_graph, star
from vbsqc.statevec import (
    Z,
    apply_1q,
    apply_cz,
    basis_state,
    entropy_bits,
    fidelity_up_to_phase,
    graph_state,
    plus_state,
)
from vbsqc.vbs import (
    TOY_MAX_VIRTUAL,
    absorb_minus,
    absorb_plus,
    bond_state,
    edge_hamiltonian,
    materialize,
    patch_hamiltonian,
    projector,
    singlet_state,
    toy_model_check,
    vbs_spec,
    z_measure_site,
)

R2 = 1 / math.sqrt(2)
PLUS = np.array([R2, R2])
MINUS = np.array([R2, -R2])


def test_projector_examples():
    assert np.array_equal(projector(1).matrix, np.eye(2))
    assert projector(2).matrix.tolist() == [[1, 0, 0, 0], [0, 0, 0, 1]]
    nz = np.nonzero(projector(4).matrix)
    assert list(nz[1]) == [0, 15]
    with pytest.raises(InvalidArity):
        projector(0)


@pytest.mark.parametrize("n", range(2, 7))
def test_absorption_identities(n):
    p = projector(n).matrix
    lower = projector(n - 1).matrix
    eye = np.eye(1 << (n - 1))
    assert np.allclose(p @ np.kron(eye, PLUS[:, None]), R2 * lower, atol=1e-12, rtol=0)
    assert np.allclose(p @ np.kron(eye, MINUS[:, None]), R2 * np.diag([1, -1]) @ lower, atol=1e-12, rtol=0)
    assert absorb_plus(projector(n)).arity == n - 1
    flag, q = absorb_minus(projector(n))
    assert flag and q.arity == n - 1


def test_absorb_needs_spare_qubit():
    with pytest.raises(CannotAbsorb):
        absorb_plus(projector(1))
    with pytest.raises(CannotAbsorb):
        absorb_minus(projector(1))


def test_bond_state():
    b = bond_state()
    assert np.allclose(b.amps, apply_cz(plus_state(2), 0, 1).amps)
    assert entropy_bits(b, [0]) == pytest.approx(1.0, abs=1e-12)
    assert fidelity_up_to_phase(b, basis_state([0, 0])) == pytest.approx(0.25)


def test_singlet():
    assert np.allclose(singlet_state().amps, np.array([0, 1, -1, 0]) * R2)


@pytest.mark.parametrize("g", [new_graph(2, [(0, 1)]), chain(3), grid(2, 2), star(4), new_graph(3, [(0, 1)]), new_graph(1)])
def test_materialize_matches_graph_state(g):
    assert fidelity_up_to_phase(materialize(vbs_spec(g)), graph_state(g)) >= 1 - 1e-10


def test_materialize_k2_is_bond():
    assert fidelity_up_to_phase(materialize(vbs_spec(new_graph(2, [(0, 1)]))), bond_state()) == pytest.approx(1.0)


def test_materialize_dense_six_vertices():
    k6 = new_graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6)])
    assert fidelity_up_to_phase(materialize(vbs_spec(k6)), graph_state(k6)) >= 1 - 1e-10


def test_materialize_too_large():
    with pytest.raises(TooLarge):
        materialize(vbs_spec(chain(21)))


def test_vbs_spec_arity():
    spec = vbs_spec(star(3))
    assert spec.site_arity == (3, 1, 1, 1)
    assert sorted(spec.edge_slots[((0, k), 0)] for k in (1, 2, 3)) == [0, 1, 2]


def test_z_measure_chain3():
    s = graph_state(chain(3))
    post0, p0 = z_measure_site(s, 2, 0)
    assert p0 == pytest.approx(0.5)
    assert fidelity_up_to_phase(post0, graph_state(chain(2))) == pytest.approx(1.0)
    post1, _ = z_measure_site(s, 2, 1)
    assert fidelity_up_to_phase(post1, apply_1q(graph_state(chain(2)), Z, 1)) == pytest.approx(1.0)


def test_z_measure_single_vertex():
    for k in (0, 1):
        post, p = z_measure_site(graph_state(new_graph(1)), 0, k)
        assert post.n == 0 and p == pytest.approx(0.5)


def test_z_measure_out_of_range():
    with pytest.raises(QubitOutOfRange):
        z_measure_site(plus_state(2), 2, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6), st.integers(0, 1))
def test_bond_breaking_commutes_with_materialization(seed, n, outcome):
    r = np.random.default_rng(seed)
    g = random_graph(r, n)
    v = int(r.integers(n))
    measured, _ = z_measure_site(materialize(vbs_spec(g)), v, outcome)
    h, labels = g.remove_vertex(v)
    expect = materialize(vbs_spec(h)) if h.n else None
    if expect is None:
        assert measured.n == 0
        return
    if outcome:
        for w in g.neighbors(v):
            expect = apply_1q(expect, Z, labels.index(w))
    assert fidelity_up_to_phase(measured, expect) >= 1 - 1e-10


def test_edge_hamiltonian_spectrum_and_kernel():
    h = edge_hamiltonian()
    w, v = np.linalg.eigh(h)
    assert np.allclose(w, [0, 4, 4, 4], atol=1e-12)
    k = v[:, 0] * np.sign(v[1, 0])
    assert np.allclose(k, np.array([0, 1, -1, 0]) * R2, atol=1e-12)
    # oracle: XX + YY + ZZ + 3 from Kronecker products
    ref = sum(np.kron(p, p) for p in (oracles.X, oracles.Y, oracles.Z)).real + 3 * np.eye(4)
    assert np.allclose(h, ref)


def test_single_edge_toy_model():
    rep = toy_model_check(new_graph(2, [(0, 1)]))
    assert rep.passed and rep.unique
    assert rep.gap == pytest.approx(4.0)


@pytest.mark.parametrize("patch", [honeycomb(1, 1), chain(4), star(3)])
def test_toy_model_patches(patch):
    rep = toy_model_check(patch)
    assert rep.n_virtual <= TOY_MAX_VIRTUAL
    assert rep.edge_term_psd and rep.kernel_is_singlet
    assert abs(rep.product_energy) < 1e-10
    assert rep.unique and rep.ground_fidelity >= 1 - 1e-10


def test_patch_hamiltonian_hermitian_and_psd():
    h, pairs = patch_hamiltonian(honeycomb(1, 1))
    assert len(pairs) == 6
    assert abs(h - h.T).max() == 0
    lowest = eigsh(h, k=1, which="SA", return_eigenvectors=False)[0]
    assert lowest > -1e-10


def test_toy_model_limits():
    with pytest.raises(TooLarge):
        patch_hamiltonian(chain(8))
    with pytest.raises(ValueError):
        toy_model_check(star(4))
