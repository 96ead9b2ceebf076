# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gauss-Jordan kernels over prime fields.

Entries are int64 residues in [0, p). Every routine here has a drop-in twin in
``_kernels_py`` with identical results.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p) noexcept nogil:
    # extended Euclid; a is a nonzero residue
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int _rref(i64[:, ::1] a, i64 p, i64[::1] piv) noexcept nogil:
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t row = 0, col, r, c, found
    cdef i64 f, inv, tmp
    for col in range(ncols):
        if row >= nrows:
            break
        found = -1
        for r in range(row, nrows):
            if a[r, col] != 0:
                found = r
                break
        if found < 0:
            continue
        if found != row:
            for c in range(col, ncols):
                tmp = a[row, c]
                a[row, c] = a[found, c]
                a[found, c] = tmp
        inv = _inv(a[row, col], p)
        if inv != 1:
            for c in range(col, ncols):
                a[row, c] = (a[row, c] * inv) % p
        for r in range(nrows):
            if r != row:
                f = a[r, col]
                if f != 0:
                    for c in range(col, ncols):
                        a[r, c] = (a[r, c] - f * a[row, c]) % p
                        if a[r, c] < 0:
                            a[r, c] += p
        piv[row] = col
        row += 1
    return row


def rref_inplace(cnp.ndarray a, long long p):
    """Reduce ``a`` to reduced row echelon form in place; return pivot columns."""
    cdef i64[:, ::1] view = a
    cdef Py_ssize_t k = min(a.shape[0], a.shape[1])
    piv = np.empty(max(k, 1), dtype=np.int64)
    cdef i64[::1] pview = piv
    cdef int rank
    with nogil:
        rank = _rref(view, p, pview)
    return [int(x) for x in piv[:rank]]


def rank_batch(cnp.ndarray stack, long long p):
    """Ranks of a (K, n, m) stack of matrices; the input is not modified."""
    cdef Py_ssize_t K = stack.shape[0], n = stack.shape[1], m = stack.shape[2]
    work = np.ascontiguousarray(stack, dtype=np.int64).copy()
    cdef i64[:, :, ::1] w = work
    out = np.zeros(K, dtype=np.int64)
    cdef i64[::1] o = out
    piv = np.empty(max(min(n, m), 1), dtype=np.int64)
    cdef i64[::1] pview = piv
    cdef Py_ssize_t k
    with nogil:
        for k in range(K):
            o[k] = _rref(w[k], p, pview)
    return out
