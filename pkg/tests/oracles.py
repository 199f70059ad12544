"""Reference computations written without the package's own kernels.

Everything here builds full matrices with ``np.kron`` or enumerates basis
states directly, so it shares no code path with ``vbsqc``.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.diag([1, 1j])
LETTERS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def full_op(n: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    """Operator on n qubits, little-endian: qubit q is bit q, so it is the (n-1-q)-th kron factor."""
    return reduce(np.kron, [ops.get(q, I2) for q in reversed(range(n))])


def pauli_matrix(word: str) -> np.ndarray:
    """Word letter k acts on qubit k."""
    return full_op(len(word), {q: LETTERS[c] for q, c in enumerate(word)})


def cz_matrix(n: int, a: int, b: int) -> np.ndarray:
    d = np.ones(1 << n, dtype=complex)
    for i in range(1 << n):
        if (i >> a) & 1 and (i >> b) & 1:
            d[i] = -1
    return np.diag(d)


def graph_state_amps(n: int, edges) -> np.ndarray:
    """(-1)^{number of edges with both ends set} / 2^{n/2} per basis index."""
    amps = np.empty(1 << n, dtype=complex)
    for i in range(1 << n):
        k = sum(((i >> u) & 1) & ((i >> v) & 1) for u, v in edges)
        amps[i] = (-1) ** k
    return amps / 2 ** (n / 2)


def entropy(amps: np.ndarray, n: int, region) -> float:
    """Von Neumann entropy (bits) from the Schmidt coefficients of the bipartition."""
    region = sorted(region)
    rest = [q for q in range(n) if q not in region]
    psi = amps.reshape((2,) * n)
    axes = [n - 1 - q for q in region] + [n - 1 - q for q in rest]
    m = np.transpose(psi, axes).reshape(1 << len(region), -1)
    sv = np.linalg.svd(m, compute_uv=False) ** 2
    sv = sv[sv > 1e-14]
    return float(-(sv * np.log2(sv)).sum())


def gf2_rank(rows) -> int:
    """Rank over GF(2) of 0/1 rows, by bitmask elimination."""
    basis: list[int] = []
    for row in rows:
        v = int("".join(str(int(b)) for b in row) or "0", 2)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def cut_rank(n: int, edges, region) -> int:
    region = set(region)
    rest = [v for v in range(n) if v not in region]
    adj = set(edges) | {(v, u) for u, v in edges}
    return gf2_rank([[1 if (a, b) in adj else 0 for b in rest] for a in sorted(region)])


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    return float(abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real))


def all_bitstrings(n: int):
    return itertools.product((0, 1), repeat=n)
