"""Stabilizer-tableau simulation over GF(2).

A :class:`Tableau` holds ``n`` commuting, independent Pauli generators. Row
``i`` of the public ``X``/``Z`` bit matrices encodes
``sign[i] * prod_q P_q`` where ``P_q`` is ``I, X, Z, Y`` for bits
``(x, z) = (0,0), (1,0), (0,1), (1,1)``. Destabilizer rows are kept alongside
for fast measurement but are not part of the state's identity.

Measurement outcome bit 0 means eigenvalue ``+1``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import gf2
from .errors import (
    BadPhase,
    DimensionMismatch,
    InvalidSubset,
    NoPath,
    QubitOutOfRange,
    VertexOutOfRange,
    ZeroProbabilityBranch,
)
from .graph import Graph, new_graph
from .statevec import StateVector, kron_le

__all__ = [
    "CLIFFORD_GATES",
    "PauliString",
    "Tableau",
    "apply_clifford",
    "apply_local_clifford",
    "canonical_form",
    "entropy_of_region",
    "extract_bell_pattern",
    "graph_region_entropy",
    "is_stabilized_by",
    "measure_pauli",
    "run_pauli_measurements",
    "same_state",
    "shortcut_path",
    "tableau_from_stabilizers",
    "tableau_graph_state",
    "tableau_to_graph",
    "tableau_zero_state",
    "tensor_tableaux",
    "to_statevector",
]

CLIFFORD_GATES = ("H", "S", "SDG", "CZ", "CNOT", "X", "Y", "Z")

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}
_PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis; ``letters[q]`` acts on qubit ``q``."""

    letters: str
    phase: complex = 1

    def __post_init__(self) -> None:
        if any(c not in _LETTER_BITS for c in self.letters):
            raise ValueError(f"bad Pauli letters {self.letters!r}")
        if self.phase not in (1, -1, 1j, -1j):
            raise BadPhase(f"phase must be one of +-1, +-i, got {self.phase}")

    @classmethod
    def parse(cls, text: str) -> PauliString:
        """``"-XZI"``, ``"+iYY"``, ``"ZZ"``, ..."""
        phase: complex = 1
        if text[:1] in "+-":
            phase = -1 if text[0] == "-" else 1
            text = text[1:]
        if text[:1] == "i":
            phase *= 1j
            text = text[1:]
        return cls(text, phase)

    @classmethod
    def single(cls, n: int, q: int, letter: str, sign: int = 1) -> PauliString:
        chars = ["I"] * n
        chars[q] = letter
        return cls("".join(chars), sign)

    @classmethod
    def from_bits(cls, x: Sequence[int], z: Sequence[int], sign: int = 1) -> PauliString:
        return cls("".join(_BITS_LETTER[(int(a), int(b))] for a, b in zip(x, z)), sign)

    @property
    def n(self) -> int:
        return len(self.letters)

    def bits(self) -> tuple[np.ndarray, np.ndarray]:
        x = np.array([_LETTER_BITS[c][0] for c in self.letters], dtype=np.uint8)
        z = np.array([_LETTER_BITS[c][1] for c in self.letters], dtype=np.uint8)
        return x, z

    def to_matrix(self) -> np.ndarray:
        return self.phase * kron_le(*(_PAULI_MATS[c] for c in self.letters))

    def apply(self, s: StateVector) -> StateVector:
        """Apply to a dense state without building the 2^n x 2^n matrix."""
        if s.n != self.n:
            raise DimensionMismatch(f"{self.n}-qubit Pauli on {s.n}-qubit state")
        x, z = self.bits()
        xm = sum(int(b) << q for q, b in enumerate(x))
        zm = sum(int(b) << q for q, b in enumerate(z))
        idx = np.arange(1 << s.n)
        par = np.zeros(idx.shape, dtype=np.int64)
        m = idx & zm
        while m.any():
            par ^= m & 1
            m = m >> 1
        ny = int(np.sum(x & z))
        out = np.empty_like(s.amps)
        out[idx ^ xm] = s.amps * np.where(par, -1, 1)
        return StateVector(s.n, out * (self.phase * 1j**ny))

    def __str__(self) -> str:
        sign = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return sign + self.letters


def _g(x1: np.ndarray, z1: np.ndarray, x2: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Power of i picked up by the product (x1,z1)*(x2,z2), per qubit."""
    x1, z1, x2, z2 = (a.astype(np.int64) for a in (x1, z1, x2, z2))
    return np.where(
        x1 & z1,
        z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )


class Tableau:
    """Stabilizer state of ``n`` qubits (Aaronson-Gottesman layout internally).

    Internal rows ``0..n-1`` are destabilizers, ``n..2n-1`` stabilizers.
    Build instances with :func:`tableau_graph_state`,
    :func:`tableau_zero_state` or :func:`tableau_from_stabilizers`.
    """

    __slots__ = ("n", "_x", "_z", "_r")

    def __init__(self, n: int, x: np.ndarray, z: np.ndarray, r: np.ndarray):
        self.n = n
        self._x = x
        self._z = z
        self._r = r

    # -- public view -----------------------------------------------------
    @property
    def X(self) -> np.ndarray:
        return self._x[self.n :].copy()

    @property
    def Z(self) -> np.ndarray:
        return self._z[self.n :].copy()

    @property
    def signs(self) -> np.ndarray:
        return np.where(self._r[self.n :], -1, 1)

    def stabilizers(self) -> list[PauliString]:
        return [
            PauliString.from_bits(self._x[i], self._z[i], -1 if self._r[i] else 1)
            for i in range(self.n, 2 * self.n)
        ]

    def copy(self) -> Tableau:
        return Tableau(self.n, self._x.copy(), self._z.copy(), self._r.copy())

    def __repr__(self) -> str:
        return f"Tableau({', '.join(map(str, self.stabilizers()))})"

    def check_invariants(self) -> None:
        """Raise AssertionError unless generators commute, are independent, and pair with destabilizers."""
        n = self.n
        x, z = self._x.astype(np.int64), self._z.astype(np.int64)
        sym = (x @ z.T + z @ x.T) % 2
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        expected[:n, n:] = np.eye(n, dtype=np.int64)
        expected[n:, :n] = np.eye(n, dtype=np.int64)
        stab_block = sym[n:, n:]
        assert not stab_block.any(), "stabilizers do not commute"
        assert (sym[:n, n:] == expected[:n, n:]).all(), "destabilizer pairing broken"
        assert gf2.rank(np.concatenate([self._x[n:], self._z[n:]], axis=1)) == n, "generators dependent"

    # -- row arithmetic --------------------------------------------------
    def _rowmult(self, targets: np.ndarray, src: int) -> None:
        """rows[targets] <- rows[src] * rows[targets], phases tracked."""
        if targets.size == 0:
            return
        x, z, r = self._x, self._z, self._r
        tot = (
            2 * r[targets].astype(np.int64)
            + 2 * int(r[src])
            + _g(x[src][None, :], z[src][None, :], x[targets], z[targets]).sum(axis=1)
        )
        r[targets] = ((tot % 4) // 2).astype(np.uint8)
        x[targets] ^= x[src]
        z[targets] ^= z[src]

    def _anticommuting(self, px: np.ndarray, pz: np.ndarray) -> np.ndarray:
        return ((self._x @ pz.astype(np.int64) + self._z @ px.astype(np.int64)) & 1).astype(bool)

    def _product_of_stabilizers(self, idx: Iterable[int]) -> tuple[np.ndarray, np.ndarray, int]:
        n = self.n
        sx = np.zeros(n, dtype=np.uint8)
        sz = np.zeros(n, dtype=np.uint8)
        phase = 0
        for i in idx:
            phase += 2 * int(self._r[i]) + int(_g(self._x[i], self._z[i], sx, sz).sum())
            sx ^= self._x[i]
            sz ^= self._z[i]
        return sx, sz, (phase % 4) // 2

    # -- in-place gates --------------------------------------------------
    def _apply(self, gate: str, targets: Sequence[int]) -> None:
        x, z, r = self._x, self._z, self._r
        gate = gate.upper()
        need = 2 if gate in ("CZ", "CNOT") else 1
        if len(targets) != need:
            raise QubitOutOfRange(f"{gate} takes {need} target(s), got {list(targets)}")
        for q in targets:
            if not 0 <= q < self.n:
                raise QubitOutOfRange(f"qubit {q} not in [0, {self.n})")
        if need == 2 and targets[0] == targets[1]:
            raise QubitOutOfRange("two-qubit gate on a single qubit")
        if gate == "H":
            (q,) = targets
            r ^= x[:, q] & z[:, q]
            x[:, q], z[:, q] = z[:, q].copy(), x[:, q].copy()
        elif gate == "S":
            (q,) = targets
            r ^= x[:, q] & z[:, q]
            z[:, q] ^= x[:, q]
        elif gate == "SDG":
            for _ in range(3):
                self._apply("S", targets)
        elif gate == "X":
            r ^= z[:, targets[0]]
        elif gate == "Z":
            r ^= x[:, targets[0]]
        elif gate == "Y":
            r ^= x[:, targets[0]] ^ z[:, targets[0]]
        elif gate == "CZ":
            a, b = targets
            r ^= x[:, a] & x[:, b] & (z[:, a] ^ z[:, b])
            z[:, a] ^= x[:, b]
            z[:, b] ^= x[:, a]
        elif gate == "CNOT":
            c, t = targets
            r ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
            x[:, t] ^= x[:, c]
            z[:, c] ^= z[:, t]
        else:
            raise ValueError(f"unknown Clifford gate {gate!r}; expected one of {CLIFFORD_GATES}")

    # -- in-place measurement ------------------------------------------
    def _measure(
        self,
        px: np.ndarray,
        pz: np.ndarray,
        psign: int,
        outcome: int | None,
        rng: np.random.Generator | None,
    ) -> tuple[int, bool, int]:
        """Measure +-P; return (outcome, deterministic, stabilizer row now equal to +-P or -1)."""
        n = self.n
        anti = self._anticommuting(px, pz)
        stab_hits = np.nonzero(anti[n:])[0]
        if stab_hits.size:
            p = n + int(stab_hits[0])
            others = np.nonzero(anti)[0]
            others = others[others != p]
            self._rowmult(others, p)
            self._x[p - n], self._z[p - n], self._r[p - n] = self._x[p], self._z[p], self._r[p]
            if outcome is None:
                if rng is None:
                    raise ValueError("either a forced outcome or an rng is required")
                outcome = int(rng.integers(2))
            self._x[p] = px
            self._z[p] = pz
            self._r[p] = (psign ^ outcome) & 1
            return int(outcome), False, p
        hits = np.nonzero(anti[:n])[0]
        _, _, sgn = self._product_of_stabilizers(hits + n)
        result = sgn ^ psign
        if outcome is not None and outcome != result:
            raise ZeroProbabilityBranch(f"deterministic outcome is {result}, forced {outcome}")
        return result, True, -1

    def _make_row(self, px: np.ndarray, pz: np.ndarray) -> int:
        """Rotate generators so some stabilizer row equals +-P (P in the group); return its index."""
        n = self.n
        anti = self._anticommuting(px, pz)
        hits = np.nonzero(anti[:n])[0]
        p = int(hits[0])
        for j in hits[1:]:
            self._rowmult(np.array([n + p]), n + int(j))
            self._rowmult(np.array([int(j)]), p)
        return n + p

    def _drop_qubit(self, q: int, row: int) -> None:
        """Remove qubit q, whose state is the single-qubit stabilizer in ``row``."""
        n = self.n
        x, z = self._x, self._z
        nz = np.nonzero(x[n:, q] | z[n:, q])[0] + n
        self._rowmult(nz[nz != row], row)
        keep_rows = [i for i in range(2 * n) if i not in (row, row - n)]
        keep_cols = [c for c in range(n) if c != q]
        self._x = x[np.ix_(keep_rows, keep_cols)]
        self._z = z[np.ix_(keep_rows, keep_cols)]
        self._r = self._r[keep_rows]
        self.n = n - 1

    def _append_plus(self) -> None:
        """Tensor on a fresh |+> as the new last qubit."""
        n = self.n
        x = np.zeros((2 * n + 2, n + 1), dtype=np.uint8)
        z = np.zeros_like(x)
        r = np.zeros(2 * n + 2, dtype=np.uint8)
        x[:n, :n], z[:n, :n], r[:n] = self._x[:n], self._z[:n], self._r[:n]
        x[n + 1 : 2 * n + 1, :n] = self._x[n:]
        z[n + 1 : 2 * n + 1, :n] = self._z[n:]
        r[n + 1 : 2 * n + 1] = self._r[n:]
        z[n, n] = 1  # destabilizer Z
        x[2 * n + 1, n] = 1  # stabilizer X
        self._x, self._z, self._r, self.n = x, z, r, n + 1


def _empty(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return (
        np.zeros((2 * n, n), dtype=np.uint8),
        np.zeros((2 * n, n), dtype=np.uint8),
        np.zeros(2 * n, dtype=np.uint8),
    )


def tableau_zero_state(n: int) -> Tableau:
    x, z, r = _empty(n)
    x[:n] = np.eye(n, dtype=np.uint8)
    z[n:] = np.eye(n, dtype=np.uint8)
    return Tableau(n, x, z, r)


def tableau_graph_state(g: Graph) -> Tableau:
    """Generators ``X_a prod_{b ~ a} Z_b`` with sign +1, one per vertex."""
    n = g.n
    x, z, r = _empty(n)
    z[:n] = np.eye(n, dtype=np.uint8)
    x[n:] = np.eye(n, dtype=np.uint8)
    z[n:] = g.adjacency
    return Tableau(n, x, z, r)


def _destabilizers(sx: np.ndarray, sz: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = sx.shape[0]
    b = gf2.right_inverse(np.concatenate([sz, sx], axis=1))  # symplectic pairing <S_i, D_j> = delta
    dx, dz = b[:n].T.copy(), b[n:].T.copy()
    for j in range(n):
        for i in range(j):
            if (int(dx[i] @ dz[j]) + int(dz[i] @ dx[j])) & 1:
                dx[j] ^= sx[i]
                dz[j] ^= sz[i]
    return dx, dz


def tableau_from_stabilizers(generators: Sequence[PauliString | str]) -> Tableau:
    """Tableau from n commuting independent generators with real phase."""
    gens = [PauliString.parse(g) if isinstance(g, str) else g for g in generators]
    n = len(gens)
    if any(g.n != n for g in gens):
        raise DimensionMismatch("need exactly n generators on n qubits")
    if any(g.phase not in (1, -1) for g in gens):
        raise BadPhase("generators need real phase")
    bits = [g.bits() for g in gens]
    sx = np.array([b[0] for b in bits], dtype=np.uint8).reshape(n, n)
    sz = np.array([b[1] for b in bits], dtype=np.uint8).reshape(n, n)
    sym = (sx.astype(np.int64) @ sz.T + sz.astype(np.int64) @ sx.T) % 2
    if sym.any():
        raise ValueError("generators do not commute")
    if gf2.rank(np.concatenate([sx, sz], axis=1)) != n:
        raise ValueError("generators are not independent")
    dx, dz = _destabilizers(sx, sz)
    x, z, r = _empty(n)
    x[:n], z[:n] = dx, dz
    x[n:], z[n:] = sx, sz
    r[n:] = [1 if g.phase == -1 else 0 for g in gens]
    return Tableau(n, x, z, r)


def tensor_tableaux(a: Tableau, b: Tableau) -> Tableau:
    """``a`` on qubits ``0..a.n-1``, ``b`` after it."""
    n = a.n + b.n
    x, z, r = _empty(n)
    for blk, off_rows, t, off_col in ((0, 0, a, 0), (0, a.n, b, a.n), (1, 0, a, 0), (1, a.n, b, a.n)):
        base = blk * n + off_rows
        src = slice(blk * t.n, (blk + 1) * t.n)
        x[base : base + t.n, off_col : off_col + t.n] = t._x[src]
        z[base : base + t.n, off_col : off_col + t.n] = t._z[src]
        r[base : base + t.n] = t._r[src]
    return Tableau(n, x, z, r)


def apply_clifford(t: Tableau, gate: str, targets: Sequence[int] | int) -> Tableau:
    """Conjugate every generator by ``gate`` (one of :data:`CLIFFORD_GATES`)."""
    out = t.copy()
    out._apply(gate, [targets] if isinstance(targets, (int, np.integer)) else list(targets))
    return out


def apply_local_clifford(t: Tableau, word: str, q: int) -> Tableau:
    """Apply a word of single-qubit gates (``"HSZ"`` = H first, then S, then Z) to qubit q."""
    out = t.copy()
    for letter in word:
        out._apply(letter, [q])
    return out


def measure_pauli(
    t: Tableau,
    p: PauliString | str,
    outcome: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[int, bool, Tableau]:
    """Measure a Hermitian Pauli observable.

    Returns ``(outcome bit, deterministic, post-measurement tableau)``. A forced
    outcome that contradicts a deterministic result raises
    :class:`ZeroProbabilityBranch`.
    """
    if isinstance(p, str):
        p = PauliString.parse(p)
    if p.phase not in (1, -1):
        raise BadPhase("measured Pauli must have phase +1 or -1")
    if p.n != t.n:
        raise DimensionMismatch(f"{p.n}-qubit Pauli on {t.n}-qubit tableau")
    px, pz = p.bits()
    out = t.copy()
    bit, det, _ = out._measure(px, pz, 1 if p.phase == -1 else 0, outcome, rng)
    return bit, det, out


def _canonical_rows(t: Tableau) -> Tableau:
    """Stabilizer rows in RREF over columns X_0..X_{n-1}, Z_0..Z_{n-1}; destabilizers stale."""
    n = t.n
    w = Tableau(n, t._x.copy(), t._z.copy(), t._r.copy())
    row = n
    for col in range(2 * n):
        if row == 2 * n:
            break
        bits = w._x[:, col] if col < n else w._z[:, col - n]
        hits = np.nonzero(bits[row:])[0]
        if hits.size == 0:
            continue
        p = row + int(hits[0])
        if p != row:
            for arr in (w._x, w._z, w._r):
                arr[[row, p]] = arr[[p, row]]
        bits = w._x[:, col] if col < n else w._z[:, col - n]
        others = np.nonzero(bits[n:])[0] + n
        w._rowmult(others[others != row], row)
        row += 1
    return w


def canonical_form(t: Tableau) -> Tableau:
    """Unique generator set of the state: GF(2) RREF with X-block columns before Z-block.

    Two tableaux describe the same state iff their canonical forms agree,
    signs included.
    """
    w = _canonical_rows(t)
    n = t.n
    dx, dz = _destabilizers(w._x[n:], w._z[n:])
    w._x[:n], w._z[:n], w._r[:n] = dx, dz, 0
    return w


def same_state(a: Tableau, b: Tableau) -> bool:
    if a.n != b.n:
        return False
    ca, cb = _canonical_rows(a), _canonical_rows(b)
    n = a.n
    return bool(
        np.array_equal(ca._x[n:], cb._x[n:])
        and np.array_equal(ca._z[n:], cb._z[n:])
        and np.array_equal(ca._r[n:], cb._r[n:])
    )


def _check_region(n: int, region: Iterable[int]) -> list[int]:
    a = sorted(set(int(v) for v in region))
    if not a or len(a) >= n:
        raise InvalidSubset("region must be nonempty and proper")
    if a[0] < 0 or a[-1] >= n:
        raise InvalidSubset(f"region {a} not within [0, {n})")
    return a


def entropy_of_region(t: Tableau, region: Iterable[int]) -> int:
    """Entanglement entropy (bits) of ``region``: rank of generators restricted to it minus its size."""
    a = _check_region(t.n, region)
    sub = np.concatenate([t._x[t.n :, a], t._z[t.n :, a]], axis=1)
    return gf2.rank(sub) - len(a)


def graph_region_entropy(g: Graph, region: Iterable[int]) -> int:
    """rank over GF(2) of the adjacency block between ``region`` and its complement."""
    a = _check_region(g.n, region)
    comp = [v for v in range(g.n) if v not in set(a)]
    return gf2.rank(g.adjacency[np.ix_(a, comp)])


def extract_bell_pattern(g: Graph, a: int, b: int, path: Sequence[int]) -> list[tuple[int, str]]:
    """Pauli measurements that leave a maximally entangled pair on ``a`` and ``b``.

    X on the interior of ``path``, Z on every vertex off the path; the list
    is ordered by vertex. ``path`` must be an induced path (no chords): Z
    measurements leave the induced subgraph on the path, and only a bare
    chain swaps cleanly under X measurements.
    """
    path = [int(v) for v in path]
    for v in (a, b, *path):
        if not 0 <= v < g.n:
            raise VertexOutOfRange(f"vertex {v} not in [0, {g.n})")
    if a == b:
        raise NoPath("endpoints must differ")
    if len(path) < 2 or path[0] != a or path[-1] != b or len(set(path)) != len(path):
        raise NoPath(f"{path} is not a simple path from {a} to {b}")
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise NoPath(f"path uses non-edge ({u}, {v})")
    for i, u in enumerate(path):
        for v in path[i + 2 :]:
            if g.has_edge(u, v):
                raise NoPath(f"path has chord ({u}, {v}); use shortcut_path first")
    interior = set(path[1:-1])
    on_path = set(path)
    return [(v, "X" if v in interior else "Z") for v in range(g.n) if v not in (a, b) and (v in interior or v not in on_path)]


def shortcut_path(g: Graph, path: Sequence[int]) -> list[int]:
    """Shorten a walk to an induced path with the same endpoints by following chords."""
    path = [int(v) for v in path]
    out = [path[0]]
    i = 0
    while i < len(path) - 1:
        # jump to the furthest later path vertex adjacent to path[i]
        j = max(k for k in range(i + 1, len(path)) if g.has_edge(path[i], path[k]) or k == i + 1)
        out.append(path[j])
        i = j
    return out


def run_pauli_measurements(
    t: Tableau,
    pattern: Iterable[tuple[int, str]],
    outcomes: Sequence[int] | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[list[int], Tableau]:
    """Measure single-qubit Paulis in order; measured qubits stay in the register."""
    out = t.copy()
    bits = []
    for k, (q, letter) in enumerate(pattern):
        px, pz = PauliString.single(t.n, q, letter).bits()
        forced = None if outcomes is None else outcomes[k]
        bit, _, _ = out._measure(px, pz, 0, forced, rng)
        bits.append(bit)
    return bits, out


_INVERSE = {"H": "H", "S": "SSS", "SDG": "S", "X": "X", "Y": "Y", "Z": "Z"}


def tableau_to_graph(t: Tableau) -> tuple[Graph, list[str]]:
    """Graph ``g`` and local Clifford words ``C_q`` with ``(prod C_q) |g> = |t>``.

    Each word lists gates in application order (see :func:`apply_local_clifford`).
    The returned graph is one member of the local-Clifford class, not a
    minimal one.
    """
    n = t.n
    w = _canonical_rows(t)
    applied: list[list[str]] = [[] for _ in range(n)]

    def gate(name: str, q: int) -> None:
        w._apply(name, [q])
        applied[q].append(name)

    # rows without X support: Hadamard their Z pivot columns
    xs = w._x[n:]
    k = gf2.rank(xs)
    if k < n:
        zlow = w._z[n + k :]
        _, piv = gf2.rref(zlow)
        for q in piv:
            gate("H", q)
    w = _canonical_rows(w)
    assert np.array_equal(w._x[n:], np.eye(n, dtype=np.uint8)), "X block not invertible"
    for q in range(n):
        if w._z[n + q, q]:
            gate("SDG", q)
    for q in range(n):
        if w._r[n + q]:
            gate("Z", q)
    gamma = w._z[n:]
    assert not gamma.diagonal().any() and np.array_equal(gamma, gamma.T)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if gamma[u, v]]
    words = []
    for seq in applied:
        word = ""
        for name in reversed(seq):
            word += _INVERSE[name]
        words.append(word)
    return new_graph(n, edges), words


def to_statevector(t: Tableau) -> StateVector:
    """Dense state of a small tableau, global phase fixed so the first large amplitude is real positive."""
    n = t.n
    rng = np.random.default_rng(12345)
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    s = StateVector(n, v / np.linalg.norm(v))
    for p in t.stabilizers():
        s = StateVector(n, (s.amps + p.apply(s).amps) / 2)
    amps = s.amps / np.linalg.norm(s.amps)
    k = int(np.argmax(np.abs(amps) > 1e-8))
    amps = amps * (abs(amps[k]) / amps[k])
    return StateVector(n, amps)


def is_stabilized_by(s: StateVector, t: Tableau, tol: float = 1e-9) -> bool:
    """True when every generator has expectation +1 (within tol) on ``s``."""
    if s.n != t.n:
        raise DimensionMismatch(f"{s.n}-qubit state vs {t.n}-qubit tableau")
    return all(np.vdot(s.amps, p.apply(s).amps).real >= 1 - tol for p in t.stabilizers())
