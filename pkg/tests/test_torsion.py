import pytest

from filtral import catalog
from filtral.algebra import validate_algebra
from filtral.enumerate import enumerate_modules
from filtral.errors import NotTilting, SourceClassViolation
from filtral.filtration import convert
from filtral.homology import ext_dim, tensor_over
from filtral.module import canonical_modules, direct_sum, hom_dim, is_isomorphic, quotient, regular_module
from filtral.subcat import build_cofiltration, build_filtration, sample_sequences
from filtral.torsion import (
    EXT1,
    HOM,
    TENSOR,
    TOR1,
    Tilting,
    commutation_check,
    exactness_report,
    induced_pairs,
    round_trip,
    round_trip_b,
    tilting_check,
    torsion_report,
    trace_submodule,
    transport,
)


@pytest.fixture(scope="module")
def a2_pairs(a2):
    return induced_pairs(catalog.a2_tilting(a2))


@pytest.fixture(scope="module")
def a2_universe(a2):
    return enumerate_modules(a2, 4).nonzero()


def test_tilting_check(a2, three):
    T = catalog.a2_tilting(a2)
    rep = tilting_check(T)
    assert rep["tilting"] and rep["pd_at_most_1"] and rep["ext1_self"] == 0
    assert tilting_check(regular_module(three))["tilting"]
    P, _, S = canonical_modules(a2)
    assert not tilting_check(direct_sum(S[0], S[1]))["tilting"]  # Ext^1(S1, S2) != 0
    with pytest.raises(NotTilting):
        Tilting(direct_sum(P[0], P[0], S[0]))


def test_end_algebra(a2_pairs, a2):
    T = catalog.a2_tilting(a2)
    B = a2_pairs.B
    assert B.dim == hom_dim(T, T) == 3
    assert validate_algebra(B).ok and B.n_vertices == 2


def test_classes_by_definition(a2_pairs, a2_universe):
    T = a2_pairs.tilting.T
    for M in a2_universe:
        assert a2_pairs.over_a.torsion_spec.member(M).yes == (ext_dim(1, T, M) == 0)
        assert a2_pairs.over_a.torsionfree_spec.member(M).yes == (hom_dim(T, M) == 0)


def test_functor_dimensions(a2_pairs, a2_universe):
    tl = a2_pairs.tilting
    T = tl.T
    for M in a2_universe:
        assert tl.hom(M).dim == hom_dim(T, M)
        assert tl.ext1(M).dim == ext_dim(1, T, M)
        assert not tl.hom(M).violations() and not tl.ext1(M).violations()


def test_trace_is_torsion_part(a2_pairs, a2_universe):
    T = a2_pairs.tilting.T
    for M in a2_universe:
        t = trace_submodule(T, M)
        assert a2_pairs.over_a.torsion_spec.member(t.as_module()).yes if t.dim else True
        if t.dim < M.dim:
            assert hom_dim(T, quotient(M, t)[0]) == 0


def test_round_trips(a2_pairs, a2_universe):
    for M in a2_universe:
        specs = a2_pairs.over_a
        if specs.torsion_spec.member(M).yes or specs.torsionfree_spec.member(M).yes:
            assert round_trip(a2_pairs, M)
    tl = a2_pairs.tilting
    for M in a2_universe:
        if a2_pairs.over_a.torsion_spec.member(M).yes:
            assert round_trip_b(a2_pairs, tl.hom(M))
        if a2_pairs.over_a.torsionfree_spec.member(M).yes:
            assert round_trip_b(a2_pairs, tl.ext1(M))


def test_regular_module_is_identity_like(three):
    tl = Tilting(regular_module(three))
    for M in enumerate_modules(three, 3).nonzero():
        H = tl.hom(M)
        assert H.dim == M.dim
        assert is_isomorphic(tl.tensor(H), M)
        assert tensor_over(H, tl.bimodule).module.dim == M.dim


def test_transport_filtrations(a2_pairs, a2_universe):
    tspec = a2_pairs.over_a.torsion_spec
    fspec = a2_pairs.over_a.torsionfree_spec
    for M in a2_universe:
        if tspec.member(M).yes:
            F = convert(build_cofiltration(tspec, M, check_closures=False))
            G = transport(a2_pairs, HOM, F)
            assert G.is_valid() and G.length == F.length
            assert all(f.certificate["verdict"] == "yes" for f in G.factors)
            assert commutation_check(a2_pairs, HOM, F)
            back = transport(a2_pairs, TENSOR, G)
            assert back.is_valid()
        if fspec.member(M).yes:
            F = build_filtration(fspec, M, check_closures=False)
            G = transport(a2_pairs, EXT1, F)
            assert G.is_valid() and all(f.certificate["verdict"] == "yes" for f in G.factors)
            assert transport(a2_pairs, TOR1, G).is_valid()


def test_source_class_enforced(a2_pairs, a2):
    P, _, _ = canonical_modules(a2)
    with pytest.raises(SourceClassViolation):
        transport(a2_pairs, EXT1, P[0])


def test_torsion_report(a2_pairs, a2_universe):
    rep = torsion_report(a2_pairs.over_a, a2_universe, a2_pairs.tilting.T)
    assert rep["ok"], rep["failures"]


def test_exactness(a2_pairs, a2_universe):
    seqs = sample_sequences(a2_universe, 200, 0, 10_000)
    rep = exactness_report(a2_pairs.tilting.T, a2_pairs, seqs)
    assert rep["ok"]
