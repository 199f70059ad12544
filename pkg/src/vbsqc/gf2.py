"""Linear algebra over GF(2) on uint8 numpy arrays."""

from __future__ import annotations

import numpy as np


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns. Input is not modified."""
    a = (np.asarray(m, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        a[others] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def right_inverse(a: np.ndarray) -> np.ndarray:
    """For full-row-rank ``a`` (k x m), return ``b`` (m x k) with ``a @ b = I`` mod 2."""
    a = np.asarray(a, dtype=np.uint8) & 1
    k, m = a.shape
    aug = np.concatenate([a, np.eye(k, dtype=np.uint8)], axis=1)
    red, piv = rref(aug)
    if len(piv) < k or piv[-1] >= m:
        raise ValueError("matrix does not have full row rank over GF(2)")
    # red[:, :m] = E a, red[:, m:] = E with E invertible and E a in RREF;
    # choose b with (E a) b = E  -> put E's rows at pivot positions.
    b = np.zeros((m, k), dtype=np.uint8)
    for i, c in enumerate(piv):
        b[c] = red[i, m:]
    return b
