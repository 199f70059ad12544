"""Valence-bond-solid picture of graph states.

Every edge carries a bond ``|H> = (|00> + |01> + |10> - |11>) / 2`` between two
virtual qubits; each site then maps its virtual qubits to one physical qubit
with ``P_n = |0~><0...0| + |1~><1...1|``. For the bond-absorption identities
the normalization is explicit::

    P_n (1^{n-1} (x) |+>) = P_{n-1} / sqrt(2)
    P_n (1^{n-1} (x) |->) = sigma_z P_{n-1} / sqrt(2)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .errors import (
    CannotAbsorb,
    DegenerateProjection,
    InvalidArity,
    InvalidDimension,
    QubitOutOfRange,
    TooLarge,
)
from .graph import Graph
from .statevec import MAX_QUBITS, StateVector, measure_in_basis

__all__ = [
    "Projector",
    "ToyModelReport",
    "VbsSpec",
    "absorb_minus",
    "absorb_plus",
    "bond_state",
    "edge_hamiltonian",
    "materialize",
    "patch_hamiltonian",
    "projector",
    "singlet_state",
    "toy_model_check",
    "vbs_spec",
    "z_measure_site",
]

# largest intermediate tensor (in qubits) during materialization
MAX_CONTRACTION_QUBITS = 24
TOY_MAX_VIRTUAL = 12

_SQRT1_2 = 1 / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class Projector:
    """``P_n`` as a 2 x 2^n matrix."""

    arity: int
    matrix: np.ndarray


def projector(n: int) -> Projector:
    if n < 1:
        raise InvalidArity(f"projector arity must be >= 1, got {n}")
    m = np.zeros((2, 1 << n))
    m[0, 0] = 1.0
    m[1, -1] = 1.0
    return Projector(n, m)


def absorb_plus(p: Projector) -> Projector:
    """The arity-lowered projector obtained when the last virtual qubit is |+>."""
    if p.arity < 2:
        raise CannotAbsorb("P_1 has no spare virtual qubit")
    return projector(p.arity - 1)


def absorb_minus(p: Projector) -> tuple[bool, Projector]:
    """As :func:`absorb_plus` for |->; the flag says a sigma_z byproduct appears on the output."""
    if p.arity < 2:
        raise CannotAbsorb("P_1 has no spare virtual qubit")
    return True, projector(p.arity - 1)


def bond_state() -> StateVector:
    """Normalized |H>, equal to CZ|++>."""
    return StateVector(2, np.array([1, 1, 1, -1], dtype=complex) / 2)


def singlet_state() -> StateVector:
    """(|01> - |10>)/sqrt(2), the kernel of the toy-model edge term."""
    return StateVector(2, np.array([0, 1, -1, 0], dtype=complex) * _SQRT1_2)


@dataclass(frozen=True)
class VbsSpec:
    """Virtual-qubit bookkeeping: slot ``edge_slots[(edge, v)]`` of site ``v`` holds that edge's bond half."""

    g: Graph
    site_arity: tuple[int, ...]
    edge_slots: dict[tuple[tuple[int, int], int], int] = field(hash=False)


def vbs_spec(g: Graph) -> VbsSpec:
    slots: dict[tuple[tuple[int, int], int], int] = {}
    used = [0] * g.n
    for e in g.edges:
        for v in e:
            slots[(e, v)] = used[v]
            used[v] += 1
    arity = tuple(max(1, d) for d in used)
    return VbsSpec(g, arity, slots)


def materialize(spec: VbsSpec) -> StateVector:
    """Contract the bond network with the site projectors into an n-qubit state.

    Sites are absorbed in index order, so only bonds crossing the current
    cut are ever open; the peak tensor size is bounded by
    :data:`MAX_CONTRACTION_QUBITS`. Isolated sites hold one unbonded virtual
    qubit in |+>.
    """
    g = spec.g
    if g.n < 1:
        raise InvalidDimension("graph has no vertices")
    if g.n > MAX_QUBITS:
        raise TooLarge(f"{g.n} sites exceeds the dense cap of {MAX_QUBITS}")
    bond = bond_state().amps.reshape(2, 2)  # symmetric, so axis order is immaterial
    plus = np.full(2, _SQRT1_2, dtype=complex)
    t = np.ones((), dtype=complex)
    labels: list[tuple] = []

    for v in range(g.n):
        n = spec.site_arity[v]
        incident = sorted((e for e in g.edges if v in e), key=lambda e: spec.edge_slots[(e, v)])
        # site tensor: axis 0 physical, axis 1 + (n-1-k) holds slot k
        site = projector(n).matrix.reshape((2,) * (n + 1)).astype(complex)
        site_labels: list[tuple] = [("p", v)] + [None] * n
        if not incident:
            site = np.tensordot(site, plus, axes=([1], [0]))
            site_labels = [("p", v)]
        for k, e in enumerate(incident):
            ax = 1 + (n - 1 - k)
            w = e[0] if e[1] == v else e[1]
            if w > v:
                # attach the bond now; the slot leg becomes the far half
                site = np.moveaxis(np.tensordot(site, bond, axes=([ax], [0])), -1, ax)
                site_labels[ax] = ("v", e, w)
            else:
                site_labels[ax] = ("v", e, v)
        shared = [lab for lab in site_labels if lab in labels]
        t_axes = [labels.index(lab) for lab in shared]
        s_axes = [site_labels.index(lab) for lab in shared]
        width = t.ndim + site.ndim - 2 * len(shared)
        if width > MAX_CONTRACTION_QUBITS:
            raise TooLarge(f"contraction front of {width} qubits exceeds {MAX_CONTRACTION_QUBITS}")
        t = np.tensordot(t, site, axes=(t_axes, s_axes))
        labels = [lab for i, lab in enumerate(labels) if i not in set(t_axes)] + [
            lab for i, lab in enumerate(site_labels) if i not in set(s_axes)
        ]

    order = [labels.index(("p", v)) for v in reversed(range(g.n))]
    amps = np.ascontiguousarray(t.transpose(order)).reshape(-1).astype(complex)
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        raise DegenerateProjection("projected bond network vanished")
    return StateVector(g.n, amps / norm)


def z_measure_site(state: StateVector, site: int, outcome: int) -> tuple[StateVector, float]:
    """Measure one physical site in the computational basis and remove it.

    Returns the state on the remaining sites (order preserved) and the
    outcome probability.
    """
    if not 0 <= site < state.n:
        raise QubitOutOfRange(f"site {site} not in [0, {state.n})")
    _, prob, out = measure_in_basis(state, [site], np.eye(2), outcome=outcome, discard=True)
    return out, prob


def edge_hamiltonian() -> np.ndarray:
    """XX + YY + ZZ + 3 on two qubits (real 4 x 4)."""
    xx = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float)
    yy = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=float)
    zz = np.diag([1.0, -1.0, -1.0, 1.0])
    return xx + yy + zz + 3 * np.eye(4)


def _site_qubits(patch: Graph) -> tuple[int, dict[tuple[tuple[int, int], int], int]]:
    """Virtual qubit index per (edge, endpoint), grouped by site (one qubit per incident edge)."""
    spec = vbs_spec(patch)
    offset = 0
    index = {}
    for v in range(patch.n):
        for (e, w), slot in spec.edge_slots.items():
            if w == v:
                index[(e, v)] = offset + slot
        offset += patch.degree(v)
    return offset, index


def patch_hamiltonian(patch: Graph) -> tuple[sp.csr_matrix, list[tuple[int, int]]]:
    """Sparse sum of edge terms over the patch's virtual qubits, plus the coupled qubit pairs."""
    nq, index = _site_qubits(patch)
    if nq > TOY_MAX_VIRTUAL:
        raise TooLarge(f"{nq} virtual qubits exceeds {TOY_MAX_VIRTUAL}")
    dim = 1 << nq
    idx = np.arange(dim)
    h = sp.csr_matrix((dim, dim))
    pairs = []
    term = edge_hamiltonian()
    for e in patch.edges:
        a, b = index[(e, e[0])], index[(e, e[1])]
        pairs.append((a, b))
        # local 2-qubit index with qubit a as bit 0
        local = ((idx >> a) & 1) | (((idx >> b) & 1) << 1)
        rows, cols, vals = [], [], []
        for j in range(4):
            for i in range(4):
                if term[i, j] == 0:
                    continue
                sel = local == j
                src = idx[sel]
                dst = src & ~((1 << a) | (1 << b))
                dst = dst | ((i & 1) << a) | (((i >> 1) & 1) << b)
                rows.append(dst)
                cols.append(src)
                vals.append(np.full(src.size, term[i, j]))
        h = h + sp.csr_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
        )
    return h.tocsr(), pairs


def _singlet_product(nq: int, pairs: list[tuple[int, int]]) -> np.ndarray:
    idx = np.arange(1 << nq)
    amps = np.ones(1 << nq)
    for a, b in pairs:
        ba, bb = (idx >> a) & 1, (idx >> b) & 1
        amps = amps * np.where(ba == bb, 0.0, np.where(ba == 1, _SQRT1_2, -_SQRT1_2))
    return amps


@dataclass
class ToyModelReport:
    edge_spectrum: np.ndarray
    kernel: np.ndarray
    edge_term_psd: bool
    kernel_is_singlet: bool
    n_virtual: int
    product_energy: float
    ground_energy: float
    gap: float
    ground_fidelity: float

    @property
    def unique(self) -> bool:
        return abs(self.ground_energy) < 1e-9 and self.gap > 1e-6

    @property
    def passed(self) -> bool:
        return (
            self.edge_term_psd
            and self.kernel_is_singlet
            and abs(self.product_energy) < 1e-10
            and self.unique
            and self.ground_fidelity >= 1 - 1e-10
        )


def toy_model_check(patch: Graph) -> ToyModelReport:
    """Spin-7/2 hexagonal toy model on a small patch (each site <= 3 virtual qubits).

    Verifies the edge term is PSD with the singlet as its kernel, that the
    product of singlets has zero energy, and that exact diagonalization
    finds it as the unique ground state.
    """
    if patch.degrees and max(patch.degrees) > 3:
        raise ValueError("a spin-7/2 site holds at most 3 virtual qubits")
    term = edge_hamiltonian()
    evals, evecs = np.linalg.eigh(term)
    kernel = evecs[:, 0] * np.sign(evecs[1, 0])
    singlet = singlet_state().amps.real
    psd = bool(evals[0] > -1e-12)
    kernel_ok = bool(abs(evals[0]) < 1e-12 and evals[1] > 1e-12 and abs(kernel @ singlet) > 1 - 1e-12)

    h, pairs = patch_hamiltonian(patch)
    nq = h.shape[0].bit_length() - 1
    prod = _singlet_product(nq, pairs)
    e_prod = float(prod @ (h @ prod))
    if h.shape[0] <= 256:
        w, v = np.linalg.eigh(h.toarray())
    else:
        w, v = eigsh(h, k=3, which="SA", tol=1e-12)
        order = np.argsort(w)
        w, v = w[order], v[:, order]
    ground = v[:, 0]
    gap = float(w[1] - w[0]) if len(w) > 1 else float("inf")
    return ToyModelReport(
        edge_spectrum=evals,
        kernel=kernel,
        edge_term_psd=psd,
        kernel_is_singlet=kernel_ok,
        n_virtual=nq,
        product_energy=e_prod,
        ground_energy=float(w[0]),
        gap=gap,
        ground_fidelity=float(abs(ground @ prod) ** 2),
    )

