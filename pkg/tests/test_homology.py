import itertools

import pytest

from filtral import catalog
from filtral.enumerate import enumerate_modules
from filtral.homology import PdVerdict, ext_dim, inj_dim, is_projective, minimal_resolution, proj_dim, syzygy
from filtral.module import canonical_modules, hom_dim


def pd_by_resolution(M, limit=10):
    """Least n with Omega^n M projective; None if not reached."""
    cur = M
    for n in range(limit + 1):
        if is_projective(cur):
            return n
        cur = syzygy(cur)[0]
    return None


def ext1_by_long_exact_sequence(M, N):
    omega, _, cov = syzygy(M)
    return hom_dim(omega, N) - hom_dim(cov.projective, N) + hom_dim(M, N)


def test_loop_simple_has_infinite_pd(loop):
    _, _, S = canonical_modules(loop)
    v = proj_dim(S[0])
    assert v.is_infinite
    assert syzygy(S[0])[0].loewy_label() == "1"


def test_six_boundary_pds_match_resolutions(six):
    for X in catalog.six_boundary_modules(six):
        v = proj_dim(X)
        assert v.is_finite and v.n == pd_by_resolution(X), X


def test_pd_against_resolution_on_universe(three):
    for M in enumerate_modules(three, 3).nonzero():
        v = proj_dim(M)
        n = pd_by_resolution(M)
        if n is None:
            assert not v.is_finite
        else:
            assert v.is_finite and v.n == n


def test_unknown_at_low_cutoff(loop):
    _, _, S = canonical_modules(loop)
    v = proj_dim(S[0], cutoff=0)
    assert v.is_unknown and v.at_most(3) is None


def test_verdict_serialization():
    assert PdVerdict.finite(2).to_dict() == {"kind": "finite", "n": 2}
    assert PdVerdict.infinite(0, 1).to_dict() == {"kind": "infinite", "witness": [0, 1]}
    assert PdVerdict.unknown(12).to_dict() == {"kind": "unknown", "cutoff": 12}
    assert PdVerdict.finite(1).at_most(1) is True
    assert PdVerdict.infinite(0, 1).at_most(5) is False


@pytest.mark.parametrize("name", ["three", "a2", "loop"])
def test_ext1_long_exact_sequence(name, request):
    A = request.getfixturevalue(name)
    mods = enumerate_modules(A, 3).nonzero()
    for M, N in itertools.product(mods, repeat=2):
        assert ext_dim(1, M, N) == ext1_by_long_exact_sequence(M, N)


def test_ext_dimension_shift(three):
    mods = enumerate_modules(three, 3).nonzero()
    for M, N in itertools.product(mods[:12], mods[:12]):
        omega = syzygy(M)[0]
        if omega.dim:
            assert ext_dim(2, M, N) == ext_dim(1, omega, N)


def test_a2_euler_form(a2):
    # hereditary: hom - ext1 = sum m_i n_i - m_1 n_2
    mods = enumerate_modules(a2, 3).nonzero()
    for M, N in itertools.product(mods, repeat=2):
        m, n = M.dim_vector, N.dim_vector
        form = m[0] * n[0] + m[1] * n[1] - m[0] * n[1]
        assert hom_dim(M, N) - ext_dim(1, M, N) == form
        assert ext_dim(2, M, N) == 0


def test_injective_dimension(a2, loop):
    for M in enumerate_modules(a2, 3).nonzero():
        assert inj_dim(M).at_most(1)
    _, I, S = canonical_modules(loop)
    assert inj_dim(S[0]).is_infinite
    assert inj_dim(I[0]).n == 0


def test_minimal_resolution_is_exact(six, three):
    for M in [catalog.three_m(three), *catalog.six_boundary_modules(six)]:
        res = minimal_resolution(M, 4)
        assert not res.problems()
