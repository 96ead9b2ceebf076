import numpy as np
import pytest

from filtral import catalog, linalg as la
from filtral.enumerate import enumerate_modules
from filtral.errors import InvalidFiltration
from filtral.filtration import COFILTRATION, FILTRATION, Filtration, convert, theta_filtration
from filtral.module import Morphism, composition_series, quotient
from filtral.torsion import factor_multiset_equal

from helpers import random_filtrations


def test_convert_is_an_involution(three, six):
    mods = enumerate_modules(three, 4).nonzero() + catalog.six_boundary_modules(six)
    for F in random_filtrations(mods, 60, seed=7):
        G = convert(F)
        assert G.kind == COFILTRATION and G.is_valid()
        H = convert(G)
        assert H.kind == FILTRATION and H.is_valid()
        assert [s.key for s in H.chain] == [s.key for s in F.chain]
        assert factor_multiset_equal(F.factor_modules(), H.factor_modules())


def test_three_displayed_chains(three):
    M = catalog.three_m(three)
    F = catalog.three_m_filtration(M)
    G = catalog.three_m_cofiltration(M)
    assert F.is_valid() and G.is_valid()
    assert sorted(x.loewy_label() for x in F.factor_modules()) == ["1/3", "2", "3/3"]
    assert factor_multiset_equal(convert(F).factor_modules(), F.factor_modules())
    assert factor_multiset_equal(convert(G).factor_modules(), G.factor_modules())


def test_six_chains(six):
    short, long = catalog.six_p1_chains(six)
    P = catalog.projective(six, "1")
    assert [f.loewy_label() for f in Filtration.from_chain(P, short).factor_modules()] == ["4/5/6", "1/2/3"]
    assert [f.loewy_label() for f in Filtration.from_chain(P, long).factor_modules()] == ["3/6", "2/5", "1/4"]


def test_problems_detected(a2):
    P = catalog.projective(a2, "1")
    F = Filtration.from_chain(P, composition_series(P))
    assert F.is_valid()
    F.factors.reverse()
    assert not F.is_valid()
    with pytest.raises(InvalidFiltration):
        F.validate()
    Q, f = quotient(P, P.radical)
    bad = Filtration.from_epis(P, [f])
    assert "cofiltration does not end at 0" in bad.problems()
    iso = Morphism(P, P, la.identity(P.dim))
    assert any("not proper" in s for s in Filtration.from_epis(P, [iso]).problems())


def test_theta_filtration(three):
    M = catalog.three_m(three)
    theta = [X for X in catalog.three_m_filtration(M).factor_modules()]
    F = theta_filtration(M, theta)
    assert F is not None and F.is_valid()
    assert theta_filtration(M, theta[:1]) is None
    assert np.all(np.array([f.module.dim for f in F.factors]) > 0)
