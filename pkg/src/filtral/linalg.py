"""Exact linear algebra over F_p on int64 numpy arrays.

All matrices are 2-D ``np.int64`` arrays with entries reduced to ``[0, p)``.
Vectors are rows; a subspace is stored as the nonzero rows of its reduced
row echelon form, which is canonical and therefore usable as a dictionary key.

The Gauss-Jordan kernel comes from the compiled ``_kernels`` extension when it
is importable and ``FILTRAL_PURE`` is unset; otherwise from ``_kernels_py``.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("FILTRAL_PURE"):
    from . import _kernels_py as _k

    BACKEND = "python"
else:
    try:
        from . import _kernels as _k  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _kernels_py as _k

        BACKEND = "python"

DTYPE = np.int64


class NoSolution(ValueError):
    """Raised by :func:`solve` when the linear system is inconsistent."""


def asmat(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Coerce nested lists to a reduced 2-D matrix; empty input needs ``ncols``."""
    m = np.array(a, dtype=DTYPE)
    if m.size == 0 and ncols is not None:
        m = m.reshape(0, ncols)
    elif m.ndim == 1:
        m = m.reshape(1, -1)
    return np.ascontiguousarray(m % p)


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=DTYPE)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    work = np.array(a, dtype=DTYPE, order="C") % p
    if work.shape[0] == 0 or work.shape[1] == 0:
        return work.reshape(0, work.shape[1]), []
    piv = _k.rref_inplace(work, p)
    return work[: len(piv)], piv


def rank(a: np.ndarray, p: int) -> int:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    work = np.array(a, dtype=DTYPE, order="C") % p
    return len(_k.rref_inplace(work, p))


def rank_batch(stack: np.ndarray, p: int) -> np.ndarray:
    if stack.shape[0] == 0:
        return np.zeros(0, dtype=DTYPE)
    if stack.shape[1] == 0 or stack.shape[2] == 0:
        return np.zeros(stack.shape[0], dtype=DTYPE)
    return np.asarray(_k.rank_batch(np.ascontiguousarray(stack % p, dtype=DTYPE), p))


def row_space(a: np.ndarray, p: int) -> np.ndarray:
    return rref(a, p)[0]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of ``{x : a @ x = 0}``, in echelon order of the free columns."""
    n = a.shape[1]
    if a.shape[0] == 0:
        return identity(n)
    r, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = zeros(len(free), n)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = (-r[row, f]) % p
    return basis


def left_nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of ``{x : x @ a = 0}``."""
    return nullspace(np.ascontiguousarray(a.T), p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Return one ``x`` (rows) with ``x @ a = b``; raise :class:`NoSolution` otherwise.

    ``a`` is (k, n); ``b`` is (r, n) or a single row.
    """
    b2 = np.atleast_2d(np.asarray(b, dtype=DTYPE))
    k = a.shape[0]
    if k == 0:
        if (b2 % p).any():
            raise NoSolution("right-hand side outside the zero span")
        return zeros(b2.shape[0], 0)
    # augmented system on the transpose: a.T @ x.T = b.T
    aug = np.concatenate([a.T, b2.T], axis=1) % p
    r, piv = rref(aug, p)
    if any(c >= k for c in piv):
        raise NoSolution("right-hand side outside the row span")
    x = zeros(k, b2.shape[0])
    for row, c in enumerate(piv):
        x[c] = r[row, k:]
    return np.ascontiguousarray(x.T)


def in_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    v2 = np.atleast_2d(v) % p
    if not v2.any():
        return True
    if basis.shape[0] == 0:
        return False
    return rank(np.concatenate([basis, v2]), p) == rank(basis, p)


def span_sum(u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    return row_space(np.concatenate([u, v]), p)


def span_intersection(u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    if u.shape[0] == 0 or v.shape[0] == 0:
        return zeros(0, u.shape[1])
    # x u = y v  <=>  [x, -y] [u; v] = 0
    coeffs = left_nullspace(np.concatenate([u, (-v) % p]), p)
    return row_space(coeffs[:, : u.shape[0]] @ u % p, p)


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a % p, identity(n)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise NoSolution("matrix is singular")
    return np.ascontiguousarray(r[:, n:])


def reduce_mod(basis_rref: np.ndarray, pivots: list[int], v: np.ndarray, p: int) -> np.ndarray:
    """Reduce rows ``v`` modulo an rref basis so that pivot columns vanish."""
    out = np.atleast_2d(np.array(v, dtype=DTYPE)) % p
    if len(pivots) == 0:
        return out
    coeffs = out[:, pivots]
    return (out - coeffs @ basis_rref) % p


def complement_columns(pivots: list[int], n: int) -> list[int]:
    ps = set(pivots)
    return [c for c in range(n) if c not in ps]


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            result = result @ base % p
        base = base @ base % p
        k >>= 1
    return result


def key(basis: np.ndarray) -> bytes:
    """Hashable canonical key for an rref basis."""
    return np.ascontiguousarray(basis, dtype=DTYPE).tobytes() + bytes(str(basis.shape), "ascii")
