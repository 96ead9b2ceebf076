"""Pure numpy fallback for the compiled kernels in ``_kernels.pyx``."""

from __future__ import annotations

import numpy as np


def rref_inplace(a: np.ndarray, p: int) -> list[int]:
    """Reduce ``a`` to reduced row echelon form in place; return pivot columns."""
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        found = row + int(nz[0])
        if found != row:
            a[[row, found]] = a[[found, row]]
        inv = pow(int(a[row, col]), -1, p)
        if inv != 1:
            a[row, col:] = (a[row, col:] * inv) % p
        f = a[:, col].copy()
        f[row] = 0
        if f.any():
            a[:, col:] = (a[:, col:] - np.outer(f, a[row, col:])) % p
        pivots.append(col)
        row += 1
    return pivots


def rank_batch(stack: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a (K, n, m) stack of matrices; the input is not modified."""
    out = np.zeros(stack.shape[0], dtype=np.int64)
    for k in range(stack.shape[0]):
        work = np.array(stack[k], dtype=np.int64)
        out[k] = len(rref_inplace(work, p))
    return out
