"""Dense n-qubit state-vector simulator.

Qubit ``q`` is bit ``q`` of the basis index (little-endian): for two qubits
the amplitude order is ``|q1 q0> = 00, 01, 10, 11`` with qubit 0 toggling
fastest. Multi-qubit kets passed in over an ordered qubit list ``qs`` use the
same convention relative to that list (bit ``j`` of the ket index is
``qs[j]``); :func:`kron_le` builds such operators from per-qubit factors.

Operations never mutate their input; each returns a fresh :class:`StateVector`.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    BadBasis,
    DimensionMismatch,
    InvalidDimension,
    InvalidSubset,
    NotUnitary,
    QubitOutOfRange,
    TooLarge,
    ZeroProbabilityBranch,
)
from .graph import Graph

__all__ = [
    "I2",
    "MAX_QUBITS",
    "PAULIS",
    "DensityMatrix",
    "H",
    "S",
    "StateVector",
    "X",
    "Y",
    "Z",
    "apply_1q",
    "apply_cz",
    "apply_unitary",
    "basis_state",
    "entropy_bits",
    "equal_exact",
    "fidelity_up_to_phase",
    "from_amplitudes",
    "graph_state",
    "kron_le",
    "measure_in_basis",
    "permute_qubits",
    "plus_state",
    "random_state",
    "random_unitary",
    "reduced_density",
    "tensor",
]

MAX_QUBITS = 20
FORCED_OUTCOME_FLOOR = 1e-12
_UNITARY_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
PAULIS = (I2, X, Y, Z)


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.amps.shape != (1 << self.n,):
            raise DimensionMismatch(f"expected {1 << self.n} amplitudes, got {self.amps.shape}")

    def copy(self) -> StateVector:
        return StateVector(self.n, self.amps.copy())

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __repr__(self) -> str:
        return f"StateVector(n={self.n}, amps={np.array2string(self.amps, precision=4)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    k: int
    entries: np.ndarray


def kron_le(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product with ``ops[0]`` on qubit 0 (the least significant bit)."""
    return reduce(np.kron, reversed(ops))


def _check_cap(n: int, cap: int | None = None) -> None:
    cap = MAX_QUBITS if cap is None else cap
    if n > cap:
        raise TooLarge(f"{n} qubits exceeds the dense cap of {cap}")


def _check_qubits(n: int, qs: Sequence[int]) -> None:
    for q in qs:
        if not 0 <= q < n:
            raise QubitOutOfRange(f"qubit {q} not in [0, {n})")
    if len(set(qs)) != len(qs):
        raise QubitOutOfRange(f"repeated qubit in {list(qs)}")


def _check_unitary(u: np.ndarray) -> None:
    d = u.shape[0]
    if u.shape != (d, d) or not np.allclose(u.conj().T @ u, np.eye(d), atol=_UNITARY_TOL, rtol=0):
        raise NotUnitary("matrix is not unitary within 1e-10")


def plus_state(n: int) -> StateVector:
    if n < 1:
        raise InvalidDimension("plus_state needs n >= 1")
    _check_cap(n)
    return StateVector(n, np.full(1 << n, 2 ** (-n / 2), dtype=complex))


def basis_state(bits: Sequence[int]) -> StateVector:
    """Computational basis ket with ``bits[q]`` the value of qubit ``q``."""
    n = len(bits)
    if n < 1:
        raise InvalidDimension("basis_state needs at least one qubit")
    _check_cap(n)
    amps = np.zeros(1 << n, dtype=complex)
    amps[sum(int(b) << q for q, b in enumerate(bits))] = 1.0
    return StateVector(n, amps)


def from_amplitudes(amps: Sequence[complex] | np.ndarray, normalize: bool = True) -> StateVector:
    a = np.asarray(amps, dtype=complex).ravel()
    n = int(a.size).bit_length() - 1
    if a.size != 1 << n:
        raise DimensionMismatch(f"amplitude count {a.size} is not a power of two")
    if normalize:
        a = a / np.linalg.norm(a)
    return StateVector(n, a)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """``a`` occupies qubits ``0..a.n-1``, ``b`` the qubits after it."""
    _check_cap(a.n + b.n)
    return StateVector(a.n + b.n, np.kron(b.amps, a.amps))


def _axes(n: int, qs: Sequence[int]) -> list[int]:
    # tensor axis of qubit q in a C-ordered reshape to (2,)*n
    return [n - 1 - q for q in qs]


def apply_unitary(s: StateVector, u: np.ndarray, qs: Sequence[int], check: bool = True) -> StateVector:
    """Apply a ``2^k x 2^k`` operator to qubits ``qs`` (little-endian over ``qs``)."""
    qs = list(qs)
    _check_qubits(s.n, qs)
    u = np.asarray(u, dtype=complex)
    k = len(qs)
    if u.shape != (1 << k, 1 << k):
        raise DimensionMismatch(f"operator shape {u.shape} does not act on {k} qubits")
    if check:
        _check_unitary(u)
    t = s.amps.reshape((2,) * s.n)
    # operator's row/col tensor axes: most significant (qs[-1]) first
    ut = u.reshape((2,) * (2 * k))
    src = _axes(s.n, qs[::-1])
    out = np.tensordot(ut, t, axes=(list(range(k, 2 * k)), src))
    out = np.moveaxis(out, list(range(k)), src)
    return StateVector(s.n, out.reshape(-1))


def apply_1q(s: StateVector, u: np.ndarray, q: int) -> StateVector:
    return apply_unitary(s, u, [q])


def _bits(n: int, q: int) -> np.ndarray:
    return (np.arange(1 << n) >> q) & 1


def apply_cz(s: StateVector, q1: int, q2: int) -> StateVector:
    _check_qubits(s.n, [q1, q2])
    amps = s.amps.copy()
    amps[(_bits(s.n, q1) & _bits(s.n, q2)).astype(bool)] *= -1
    return StateVector(s.n, amps)


def permute_qubits(s: StateVector, order: Sequence[int]) -> StateVector:
    """New qubit ``i`` is old qubit ``order[i]``."""
    order = list(order)
    if sorted(order) != list(range(s.n)):
        raise QubitOutOfRange(f"{order} is not a permutation of range({s.n})")
    t = s.amps.reshape((2,) * s.n)
    # new axis (n-1-i) takes old axis (n-1-order[i])
    perm = [s.n - 1 - order[s.n - 1 - ax] for ax in range(s.n)]
    return StateVector(s.n, np.ascontiguousarray(t.transpose(perm)).reshape(-1))


def graph_state(g: Graph, cap: int | None = None) -> StateVector:
    """|+>^n followed by a CZ on every edge of ``g``."""
    if g.n < 1:
        raise InvalidDimension("graph_state needs at least one vertex")
    _check_cap(g.n, cap)
    idx = np.arange(1 << g.n)
    parity = np.zeros(1 << g.n, dtype=np.int64)
    for u, v in g.edges:
        parity ^= ((idx >> u) & (idx >> v)) & 1
    amps = np.where(parity, -1.0, 1.0).astype(complex) * 2 ** (-g.n / 2)
    return StateVector(g.n, amps)


def _check_basis(basis: np.ndarray, dim: int) -> None:
    if basis.shape != (dim, dim):
        raise BadBasis(f"need {dim} kets of dimension {dim}, got shape {basis.shape}")
    gram = basis.conj() @ basis.T
    if not np.allclose(gram, np.eye(dim), atol=1e-10, rtol=0):
        raise BadBasis("basis kets are not orthonormal within 1e-10")


def _split(s: StateVector, qs: Sequence[int]) -> np.ndarray:
    """Matrix view: row = ket index over ``qs`` (little-endian), column = remaining qubits."""
    k = len(qs)
    t = s.amps.reshape((2,) * s.n)
    front = _axes(s.n, list(qs)[::-1])
    t = np.moveaxis(t, front, list(range(k)))
    return t.reshape(1 << k, -1)


def measure_in_basis(
    s: StateVector,
    qs: Sequence[int],
    basis: Sequence[np.ndarray] | np.ndarray,
    outcome: int | None = None,
    rng: np.random.Generator | None = None,
    discard: bool = False,
) -> tuple[int, float, StateVector]:
    """Projective measurement of qubits ``qs`` in an orthonormal basis.

    Parameters
    ----------
    basis : sequence of kets over ``qs``, complete for ``2**len(qs)`` dims.
    outcome : forced outcome index; if None, sample it with ``rng``.
    discard : if True, remove the measured qubits; survivors keep their
        relative order and are relabelled ``0..n-k-1``.

    Returns
    -------
    (outcome, probability, post-measurement state)
    """
    qs = list(qs)
    _check_qubits(s.n, qs)
    k = len(qs)
    b = np.asarray(basis, dtype=complex)
    _check_basis(b, 1 << k)
    proj = b.conj() @ _split(s, qs)  # row i: rest-amplitudes for outcome i
    probs = np.einsum("ij,ij->i", proj.conj(), proj).real
    if outcome is None:
        if rng is None:
            raise ValueError("either a forced outcome or an rng is required")
        p = np.clip(probs, 0, None)
        outcome = int(rng.choice(len(p), p=p / p.sum()))
    elif not 0 <= outcome < len(probs):
        raise BadBasis(f"outcome {outcome} out of range for {len(probs)} basis kets")
    prob = float(probs[outcome])
    if prob < FORCED_OUTCOME_FLOOR:
        raise ZeroProbabilityBranch(f"outcome {outcome} has probability {prob:.3e}")
    rest = proj[outcome] / np.sqrt(prob)
    if discard:
        return outcome, prob, StateVector(s.n - k, rest)
    # re-embed |b_outcome> on qs
    full = np.einsum("i,j->ij", b[outcome], rest).reshape((2,) * s.n)
    front = _axes(s.n, qs[::-1])
    full = np.moveaxis(full, list(range(k)), front)
    return outcome, prob, StateVector(s.n, np.ascontiguousarray(full).reshape(-1))


def fidelity_up_to_phase(a: StateVector, b: StateVector) -> float:
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n} qubits")
    return float(min(1.0, abs(np.vdot(a.amps, b.amps)) ** 2))


def equal_exact(a: StateVector, b: StateVector, tol: float = 1e-12) -> bool:
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n} qubits")
    return bool(np.max(np.abs(a.amps - b.amps), initial=0.0) <= tol)


def reduced_density(s: StateVector, subset: Sequence[int]) -> DensityMatrix:
    """Partial trace onto ``subset``; the result is little-endian over ``subset`` order."""
    subset = list(subset)
    if not subset or len(set(subset)) >= s.n:
        raise InvalidSubset("subset must be nonempty and proper")
    _check_qubits(s.n, subset)
    m = _split(s, subset)
    return DensityMatrix(len(subset), m @ m.conj().T)


def entropy_bits(s: StateVector, subset: Sequence[int]) -> float:
    """von Neumann entropy (base 2) of the reduced state on ``subset``."""
    rho = reduced_density(s, subset)
    ev = np.clip(np.linalg.eigvalsh(rho.entries), 0.0, None)
    ev = ev[ev > 1e-15]
    return float(max(0.0, -np.sum(ev * np.log2(ev))))


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase fix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
