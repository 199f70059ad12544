"""Gate teleportation through |H> bonds.

A single-qubit gate ``U`` is enacted by a joint measurement of the logical
qubit and one bond half in the twisted basis ``(U^dag sigma_a (x) 1)|H>``; the
other bond half then carries ``sigma_a U |psi>``. The phase gate uses three
bonds and two measurements in GHZ-type bases and yields
``(Pauli) (H (x) H) CZ |psi>``.

Byproducts are tracked in a :class:`ByproductFrame`: wire ``w`` holds a
pending ``X^x Z^z`` left factor, global phases dropped.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    CannotPush,
    DimensionMismatch,
    NotUnitary,
    QubitOutOfRange,
    TooLarge,
    VbsqcError,
)
from .statevec import (
    I2,
    MAX_QUBITS,
    PAULIS,
    H,
    StateVector,
    X,
    Z,
    _check_unitary,
    apply_unitary,
    kron_le,
    measure_in_basis,
    permute_qubits,
    tensor,
)
from .vbs import bond_state

__all__ = [
    "PAULI_BITS",
    "PHASE_GATE_WIRING",
    "ByproductFrame",
    "PhaseGateWiring",
    "bell_basis_for",
    "find_phase_gate_wirings",
    "ghz_bases",
    "ghz_index",
    "phase_gate_byproduct",
    "push_pauli",
    "same_wiring_class",
    "teleport_1q",
    "teleport_phase_gate",
]

CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)
# sigma_alpha -> (x, z) with sigma_alpha proportional to X^x Z^z
PAULI_BITS = ((0, 0), (1, 0), (1, 1), (0, 1))


@dataclass(frozen=True)
class ByproductFrame:
    x: tuple[int, ...]
    z: tuple[int, ...]

    @classmethod
    def identity(cls, n_wires: int) -> ByproductFrame:
        return cls((0,) * n_wires, (0,) * n_wires)

    @property
    def n_wires(self) -> int:
        return len(self.x)

    def operator(self, wire: int) -> np.ndarray:
        return np.linalg.matrix_power(X, self.x[wire]) @ np.linalg.matrix_power(Z, self.z[wire])

    def set(self, wire: int, x: int, z: int) -> ByproductFrame:
        xs, zs = list(self.x), list(self.z)
        xs[wire], zs[wire] = x & 1, z & 1
        return ByproductFrame(tuple(xs), tuple(zs))

    def toggle(self, wire: int, x: int = 0, z: int = 0) -> ByproductFrame:
        return self.set(wire, self.x[wire] ^ x, self.z[wire] ^ z)

    def compose(self, other: ByproductFrame) -> ByproductFrame:
        """Bitwise XOR; the product of the two frames up to phase."""
        if other.n_wires != self.n_wires:
            raise DimensionMismatch("frames cover different wire counts")
        return ByproductFrame(
            tuple(a ^ b for a, b in zip(self.x, other.x)),
            tuple(a ^ b for a, b in zip(self.z, other.z)),
        )

    def apply(self, s: StateVector, wires: Sequence[int] | None = None) -> StateVector:
        """Left-multiply the state by the frame; ``wires[i]`` is the qubit of wire ``i``."""
        wires = range(self.n_wires) if wires is None else wires
        for w, q in enumerate(wires):
            if self.x[w] or self.z[w]:
                s = apply_unitary(s, self.operator(w), [q])
        return s

    def undo(self, s: StateVector, wires: Sequence[int] | None = None) -> StateVector:
        # X^x Z^z is its own inverse up to phase
        return self.apply(s, wires)


def bell_basis_for(u: np.ndarray) -> list[np.ndarray]:
    """The four kets ``(U^dag sigma_a (x) 1)|H>``; ``U`` acts on the first qubit of each ket."""
    u = np.asarray(u, dtype=complex)
    _check_unitary(u)
    h = bond_state().amps
    return [kron_le(u.conj().T @ sig, I2) @ h for sig in PAULIS]


def _ancilla_check(n: int, extra: int) -> None:
    if n + extra > MAX_QUBITS:
        raise TooLarge(f"{n} + {extra} ancilla qubits exceeds the dense cap of {MAX_QUBITS}")


def _move_last_to(s: StateVector, targets: Sequence[int]) -> StateVector:
    """The last len(targets) qubits move to positions ``targets`` (ascending)."""
    k = len(targets)
    rest = list(range(s.n - k))
    order: list[int] = []
    tail = dict(zip(targets, range(s.n - k, s.n)))
    it = iter(rest)
    for pos in range(s.n):
        order.append(tail[pos] if pos in tail else next(it))
    return permute_qubits(s, order)


def teleport_1q(
    state: StateVector,
    wire: int,
    u: np.ndarray,
    outcome: int | None = None,
    rng: np.random.Generator | None = None,
    frame: ByproductFrame | None = None,
    adapt: bool = True,
) -> tuple[StateVector, int, ByproductFrame]:
    """Teleport qubit ``wire`` through a fresh bond while applying ``U``.

    With ``adapt`` (default) the measurement basis absorbs the wire's pending
    byproduct, so afterwards the wire holds ``sigma_a U psi`` exactly and its
    frame entry is set to ``sigma_a``. Without it, the old byproduct is pushed
    through ``U`` (Clifford ``U`` only).

    Returns ``(state, alpha, frame)``; the output qubit takes the place of ``wire``.
    """
    if not 0 <= wire < state.n:
        raise QubitOutOfRange(f"wire {wire} not in [0, {state.n})")
    u = np.asarray(u, dtype=complex)
    _check_unitary(u)
    _ancilla_check(state.n, 2)
    frame = ByproductFrame.identity(state.n) if frame is None else frame
    if adapt:
        basis = bell_basis_for(u @ frame.operator(wire))
        carried = frame.set(wire, 0, 0)
    else:
        carried = push_pauli(frame, ("1q", wire, u))
        basis = bell_basis_for(u)
    n = state.n
    full = tensor(state, bond_state())  # bond halves at n (measured) and n+1 (carrier)
    alpha, _, rest = measure_in_basis(full, [wire, n], basis, outcome=outcome, rng=rng, discard=True)
    out = _move_last_to(rest, [wire])
    bx, bz = PAULI_BITS[alpha]
    return out, alpha, carried.toggle(wire, bx, bz)


def ghz_index(i: int, j: int, sign: int) -> int:
    """Position of ``(X^i (x) X^j (x) 1)(|000> + (-1)^sign |111>)`` in :func:`ghz_bases`."""
    return i + 2 * j + 4 * sign


def _ghz_basis() -> list[np.ndarray]:
    kets = [np.zeros(8, dtype=complex) for _ in range(8)]
    for i, j, sgn in itertools.product((0, 1), repeat=3):
        ket = np.zeros(8, dtype=complex)
        ket[i | (j << 1)] = 1
        ket[(1 - i) | ((1 - j) << 1) | 4] = (-1) ** sgn
        kets[ghz_index(i, j, sgn)] = ket / np.sqrt(2)
    return kets


def ghz_bases() -> tuple[list[np.ndarray], list[np.ndarray]]:
    """The two (identical) 8-element bases; ket bit k is the k-th measured qubit."""
    return _ghz_basis(), _ghz_basis()


@dataclass(frozen=True)
class PhaseGateWiring:
    """Which of the six bond qubits join each measured triple, in basis slot order.

    Bond ``k`` occupies ancilla qubits ``2k`` and ``2k+1``; ``"w"`` marks the
    logical qubit. ``outputs`` are the two surviving ancillas (wire 1, wire 2).
    """

    first: tuple[int | str, int | str, int | str]
    second: tuple[int | str, int | str, int | str]
    outputs: tuple[int, int]


# bond 0 feeds wire 1, bond 2 feeds wire 2, bond 1 links the two measurements
PHASE_GATE_WIRING = PhaseGateWiring(first=(0, 2, "w"), second=(4, 3, "w"), outputs=(1, 5))


def phase_gate_byproduct(o1: int, o2: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """``((x1, z1), (x2, z2))`` of the Pauli left over after outcomes ``o1``, ``o2`` under the frozen wiring."""
    i1, j1, s1 = o1 & 1, (o1 >> 1) & 1, (o1 >> 2) & 1
    i2, j2, s2 = o2 & 1, (o2 >> 1) & 1, (o2 >> 2) & 1
    return (s1 ^ j2, i1), (s2 ^ j1, i2)


def _run_wiring(
    state: StateVector,
    wire1: int,
    wire2: int,
    wiring: PhaseGateWiring,
    outcomes: tuple[int | None, int | None],
    rng: np.random.Generator | None,
) -> tuple[StateVector, tuple[int, int]]:
    n = state.n
    full = state
    for _ in range(3):
        full = tensor(full, bond_state())
    basis, _ = ghz_bases()

    def qubits(triple, wire):
        return [wire if q == "w" else n + q for q in triple]

    # after the first measurement the register shrinks; track labels
    labels = list(range(n + 6))
    q1 = qubits(wiring.first, wire1)
    o1, _, full = measure_in_basis(full, q1, basis, outcome=outcomes[0], rng=rng, discard=True)
    labels = [lab for lab in labels if lab not in q1]
    q2 = [labels.index(q) for q in qubits(wiring.second, wire2)]
    o2, _, full = measure_in_basis(full, q2, basis, outcome=outcomes[1], rng=rng, discard=True)
    labels = [lab for i, lab in enumerate(labels) if i not in q2]
    # surviving: logical qubits other than wire1/wire2, then the two outputs
    out_labels = [n + wiring.outputs[0], n + wiring.outputs[1]]
    order = []
    it = iter(i for i, lab in enumerate(labels) if lab < n)
    for pos in range(n):
        if pos == wire1:
            order.append(labels.index(out_labels[0]))
        elif pos == wire2:
            order.append(labels.index(out_labels[1]))
        else:
            order.append(next(it))
    return permute_qubits(full, order), (o1, o2)


def teleport_phase_gate(
    state: StateVector,
    wire1: int,
    wire2: int,
    outcomes: tuple[int, int] | None = None,
    rng: np.random.Generator | None = None,
    frame: ByproductFrame | None = None,
) -> tuple[StateVector, tuple[int, int], ByproductFrame]:
    """Enact ``(H (x) H) CZ`` on two wires with three bonds and two GHZ-basis measurements.

    The prior frame is pushed through the gate and composed with the
    outcome-dependent byproduct from :func:`phase_gate_byproduct`.
    """
    for w in (wire1, wire2):
        if not 0 <= w < state.n:
            raise QubitOutOfRange(f"wire {w} not in [0, {state.n})")
    if wire1 == wire2:
        raise QubitOutOfRange("phase gate needs two distinct wires")
    _ancilla_check(state.n, 6)
    frame = ByproductFrame.identity(state.n) if frame is None else frame
    forced = (None, None) if outcomes is None else outcomes
    out, (o1, o2) = _run_wiring(state, wire1, wire2, PHASE_GATE_WIRING, forced, rng)
    pushed = push_pauli(frame, ("cz", wire1, wire2))
    pushed = push_pauli(pushed, ("1q", wire1, H))
    pushed = push_pauli(pushed, ("1q", wire2, H))
    (x1, z1), (x2, z2) = phase_gate_byproduct(o1, o2)
    return out, (o1, o2), pushed.toggle(wire1, x1, z1).toggle(wire2, x2, z2)


def _pauli_bits_of(m: np.ndarray) -> tuple[int, int] | None:
    """(x, z) with m proportional to X^x Z^z, or None if m is not a Pauli up to phase."""
    for x, z in PAULI_BITS:
        p = np.linalg.matrix_power(X, x) @ np.linalg.matrix_power(Z, z)
        overlap = np.trace(p.conj().T @ m) / 2
        if abs(abs(overlap) - 1) < 1e-9:
            return x, z
    return None


def push_pauli(frame: ByproductFrame, gate: tuple) -> ByproductFrame:
    """Frame ``F'`` with ``G F = F' G`` up to phase.

    ``gate`` is ``("cz", a, b)`` or ``("1q", wire, U)``; a named single-qubit
    gate ``("h", w)``, ``("s", w)``, ``("x", w)``, ... is also accepted.
    Non-Clifford ``U`` raises :class:`CannotPush`.
    """
    kind = gate[0].lower()
    if kind == "cz":
        _, a, b = gate
        return frame.toggle(b, z=frame.x[a]).toggle(a, z=frame.x[b])
    if kind == "1q":
        _, w, u = gate
    else:
        named = {"h": H, "s": np.diag([1, 1j]), "x": X, "z": Z, "y": PAULIS[2], "i": I2}
        if kind not in named:
            raise CannotPush(f"unknown gate {gate[0]!r}")
        w, u = gate[1], named[kind]
    u = np.asarray(u, dtype=complex)
    try:
        _check_unitary(u)
    except NotUnitary as exc:
        raise CannotPush(str(exc)) from exc
    f = frame.operator(w)
    image = _pauli_bits_of(u @ f @ u.conj().T)
    if image is None:
        raise CannotPush("gate is not Clifford; adapt the next measurement instead")
    return frame.set(w, *image)


def _realizes(out: StateVector, target: StateVector, wire1: int, wire2: int) -> tuple[int, int, int, int] | None:
    for x1, z1, x2, z2 in itertools.product((0, 1), repeat=4):
        f = ByproductFrame.identity(out.n).set(wire1, x1, z1).set(wire2, x2, z2)
        if abs(np.vdot(f.apply(target).amps, out.amps)) ** 2 > 1 - 1e-10:
            return x1, z1, x2, z2
    return None


def _canonical_wiring(w: PhaseGateWiring) -> tuple:
    """Smallest image of ``w`` under bond relabelling and swapping the halves of a bond."""
    best = None
    for perm in itertools.permutations(range(3)):
        for flips in itertools.product((0, 1), repeat=3):

            def m(q, perm=perm, flips=flips):
                return -1 if q == "w" else 2 * perm[q // 2] + ((q % 2) ^ flips[q // 2])

            key = (tuple(map(m, w.first)), tuple(map(m, w.second)), tuple(map(m, w.outputs)))
            best = key if best is None or key < best else best
    return best


def find_phase_gate_wirings(rng: np.random.Generator, n_inputs: int = 2) -> list[PhaseGateWiring]:
    """Enumerate wirings of three bonds into two triples that realize Pauli * (H (x) H) CZ on every branch.

    Brute force over output choice, triple membership, and slot order, one
    representative per symmetry class (bonds are interchangeable and
    symmetric under swapping halves), checked on ``n_inputs`` random inputs.
    """
    from .statevec import random_state

    inputs = [random_state(2, rng) for _ in range(n_inputs)]
    targets = [apply_unitary(apply_unitary(s, CZ_MATRIX, [0, 1]), kron_le(H, H), [0, 1]) for s in inputs]
    found = []
    seen = set()
    halves = range(6)
    for outputs in itertools.permutations(halves, 2):
        rest = [h for h in halves if h not in outputs]
        for pair in itertools.combinations(rest, 2):
            other = tuple(h for h in rest if h not in pair)
            for first in itertools.permutations((*pair, "w")):
                for second in itertools.permutations((*other, "w")):
                    wiring = PhaseGateWiring(first, second, outputs)
                    key = _canonical_wiring(wiring)
                    if key in seen:
                        continue
                    seen.add(key)
                    if _wiring_ok(wiring, inputs[:1], targets[:1], full=False) and _wiring_ok(
                        wiring, inputs, targets, full=True
                    ):
                        found.append(wiring)
    return found


def same_wiring_class(a: PhaseGateWiring, b: PhaseGateWiring) -> bool:
    return _canonical_wiring(a) == _canonical_wiring(b)


def _wiring_ok(wiring, inputs, targets, full: bool) -> bool:
    branches = itertools.product(range(8), repeat=2) if full else [(0, 0)]
    for o in branches:
        for s, t in zip(inputs, targets):
            try:
                out, _ = _run_wiring(s, 0, 1, wiring, o, None)
            except VbsqcError:
                return False
            if _realizes(out, t, 0, 1) is None:
                return False
    return True
