import itertools

import numpy as np
import pytest

from filtral import catalog, linalg as la
from filtral.enumerate import brute_force_modules
from filtral.errors import InvalidModule
from filtral.module import (
    Module,
    all_submodules,
    canonical_modules,
    composition_series,
    decompose,
    direct_sum,
    find_isomorphism,
    hom_dim,
    hom_matrices,
    is_indecomposable,
    is_isomorphic,
    quotient,
)


def brute_hom_count(M, N):
    """Number of F-linear maps M -> N commuting with every basis element."""
    p = M.p
    count = 0
    for entries in itertools.product(range(p), repeat=M.dim * N.dim):
        F = np.array(entries, dtype=np.int64).reshape(M.dim, N.dim)
        if all(np.array_equal(M.action[i] @ F % p, F @ N.action[i] % p) for i in range(M.algebra.dim)):
            count += 1
    return count


def brute_submodule_count(M):
    p, n = M.p, M.dim
    seen = set()
    vecs = [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=n)]
    for k in range(n + 1):
        for rows in itertools.combinations(vecs, k):
            B = la.row_space(np.array(rows, dtype=np.int64).reshape(k, n), p)
            if B.shape[0] != k:
                continue
            if all(la.in_span(B, r @ a % p, p) for r in B for a in M.action):
                seen.add(la.key(B))
    return len(seen)


@pytest.fixture(scope="module")
def small_modules(three):
    return [M for M in brute_force_modules(three, 3) if M.dim <= 3]


def test_hom_matches_brute_force(small_modules):
    mods = small_modules[:12]
    for M, N in itertools.product(mods, repeat=2):
        if M.dim * N.dim > 9:
            continue
        assert 2 ** hom_dim(M, N) == brute_hom_count(M, N), (M, N)


def test_hom_matrices_intertwine(six):
    P1 = catalog.projective(six, "1")
    for X in catalog.six_boundary_modules(six):
        for F in hom_matrices(P1, X):
            for a in range(six.dim):
                assert np.array_equal(P1.action[a] @ F % 2, F @ X.action[a] % 2)


def test_submodules_match_brute_force(small_modules, loop):
    P = catalog.projective(loop, "1")
    for M in small_modules[:15] + [direct_sum(P, P)]:
        if M.dim > 4:
            continue
        assert len(all_submodules(M)) == brute_submodule_count(M), M


def test_quotient_dimensions(three):
    M = catalog.three_m(three)
    for L in all_submodules(M):
        Q, f = quotient(M, L)
        assert Q.dim == M.dim - L.dim
        assert not Q.violations()
        assert f.is_epi()
        assert f.kernel() == L


def test_composition_series_length(six):
    P1 = catalog.projective(six, "1")
    chain = composition_series(P1)
    assert len(chain) == P1.dim + 1
    assert [s.dim for s in chain] == list(range(P1.dim + 1))


def test_loewy_labels(six, three):
    labels = [M.loewy_label() for M in catalog.six_boundary_modules(six)]
    assert labels == ["1/4", "2/5", "3/6", "1/2/3", "4/5/6", "5/5 6", "6/6"]
    assert catalog.three_m(three).loewy_label() == "1 2 3/3 3"


def test_decompose_and_iso(a2, loop):
    P, _, S = canonical_modules(a2)
    T = direct_sum(P[0], S[0], S[1])
    parts = decompose(T)
    assert sorted(X.loewy_label() for X in parts) == ["1", "1/2", "2"]
    assert is_isomorphic(T, direct_sum(S[1], P[0], S[0]))
    assert not is_isomorphic(T, direct_sum(P[0], S[0], S[0]))
    assert is_indecomposable(catalog.projective(loop, "1"))


def test_find_isomorphism_is_iso(three):
    M = catalog.three_m(three)
    rng = np.random.default_rng(3)
    while True:
        g = rng.integers(0, 2, size=(M.dim, M.dim))
        if la.rank(g, 2) == M.dim:
            break
    gi = la.inverse(g, 2)
    N = Module(three, np.array([g @ a @ gi % 2 for a in M.action]))
    F = find_isomorphism(M, N)
    assert F is not None and la.rank(F, 2) == M.dim
    for a in range(three.dim):
        assert np.array_equal(M.action[a] @ F % 2, F @ N.action[a] % 2)


def test_invalid_action_rejected(a2):
    bad = np.zeros((a2.dim, 1, 1), dtype=np.int64)
    with pytest.raises(InvalidModule):
        Module(a2, bad)


def test_dual_is_module_over_opposite(six):
    for X in catalog.six_boundary_modules(six):
        D = X.dual()
        assert not D.violations()
        assert D.algebra is six.opposite()
        assert D.dual().dim == X.dim


def residue_degree(M):
    """k with End(M)/rad = F_{p^k}, counting nilpotent endomorphisms (End is local)."""
    hs = hom_matrices(M, M)
    p = M.p
    nil = 0
    for coeffs in itertools.product(range(p), repeat=len(hs)):
        F = sum(c * H for c, H in zip(coeffs, hs)) % p
        if not la.matpow(F, M.dim, p).any():
            nil += 1
    r = round(np.log(nil) / np.log(p))
    assert p**r == nil
    return len(hs) - r


def test_fixture_endomorphism_tops_are_prime_field(fixtures_dir, capsys):
    from filtral.io import parse_module

    degrees = {}
    for path in sorted(fixtures_dir.glob("*/*.json")):
        if path.name == "tilting.json":
            continue
        M = parse_module(path)
        for k, X in enumerate(decompose(M)):
            if X.p ** len(hom_matrices(X, X)) <= 1 << 14:
                degrees[f"{path.parent.name}/{path.stem}#{k}"] = residue_degree(X)
    with capsys.disabled():
        print(f"\nEnd/rad degrees over F_p: {sorted(set(degrees.values()))} on {len(degrees)} summands")
    assert degrees and set(degrees.values()) == {1}
