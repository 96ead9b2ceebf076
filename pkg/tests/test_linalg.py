import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filtral import _kernels_py, linalg as la
from filtral.field import PrimeField, is_prime

try:
    from filtral import _kernels
except ImportError:  # pragma: no cover
    _kernels = None

PRIMES = [2, 3, 5, 7]


@pytest.mark.parametrize("p", PRIMES)
def test_field_axioms(p):
    F = PrimeField(p)
    els = list(F.elements())
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_non_prime_rejected():
    assert not is_prime(4) and not is_prime(1) and is_prime(251)
    with pytest.raises(ValueError):
        PrimeField(6)


def span_size(a, p):
    """Brute-force size of the row span."""
    rows = [tuple(r) for r in a]
    seen = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = np.zeros(a.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = (v + c * np.array(r)) % p
        seen.add(tuple(v))
    return len(seen)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices, st.sampled_from([2, 3]))
@settings(max_examples=60, deadline=None)
def test_rank_matches_span_count(rows, p):
    a = np.array(rows, dtype=np.int64) % p
    assert p ** la.rank(a, p) == span_size(a, p)


@given(matrices, st.sampled_from(PRIMES))
@settings(max_examples=80, deadline=None)
def test_rref_properties(rows, p):
    a = np.array(rows, dtype=np.int64) % p
    r, piv = la.rref(a, p)
    assert r.shape[0] == len(piv)
    for k, c in enumerate(piv):
        assert r[k, c] == 1
        assert all(r[j, c] == 0 for j in range(r.shape[0]) if j != k)
    # same row space
    assert la.rank(np.vstack([a, r]), p) == len(piv)


@given(matrices, st.sampled_from(PRIMES))
@settings(max_examples=80, deadline=None)
def test_nullspace_and_solve(rows, p):
    a = np.array(rows, dtype=np.int64) % p
    n = la.nullspace(a, p)
    assert n.shape[0] == a.shape[1] - la.rank(a, p)
    assert not (a @ n.T % p).any()
    x = np.arange(a.shape[0], dtype=np.int64).reshape(1, -1) % p
    b = x @ a % p
    y = la.solve(a, b, p)
    assert np.array_equal(y @ a % p, b)


@given(st.integers(1, 5), st.sampled_from(PRIMES), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_inverse(n, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(n, n))
    if la.rank(a, p) < n:
        return
    assert np.array_equal(a @ la.inverse(a, p) % p, la.identity(n))


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
@given(matrices, st.sampled_from(PRIMES + [251]))
@settings(max_examples=150, deadline=None)
def test_compiled_kernel_agrees_with_python(rows, p):
    a = np.array(rows, dtype=np.int64) % p
    b = a.copy()
    assert _kernels.rref_inplace(a, p) == _kernels_py.rref_inplace(b, p)
    assert np.array_equal(a, b)


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
@given(st.integers(0, 10_000), st.sampled_from(PRIMES))
@settings(max_examples=30, deadline=None)
def test_compiled_rank_batch_agrees(seed, p):
    stack = np.random.default_rng(seed).integers(0, p, size=(6, 4, 5)).astype(np.int64)
    assert np.array_equal(_kernels.rank_batch(stack.copy(), p), _kernels_py.rank_batch(stack.copy(), p))


def test_span_ops():
    p = 3
    u = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.int64)
    v = np.array([[0, 1, 0], [0, 0, 1]], dtype=np.int64)
    assert la.span_sum(u, v, p).shape[0] == 3
    assert np.array_equal(la.span_intersection(u, v, p), np.array([[0, 1, 0]]))
    assert la.in_span(u, np.array([2, 1, 0]), p)
    assert not la.in_span(u, np.array([0, 0, 1]), p)
