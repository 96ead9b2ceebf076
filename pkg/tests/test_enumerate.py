import pytest

from filtral import catalog
from filtral.errors import InvalidModule
from filtral.enumerate import brute_force_modules, enumerate_modules, module_from_arrows
from filtral.module import is_isomorphic


def same_classes(xs, ys):
    if len(xs) != len(ys):
        return False
    return all(any(X.invariants == Y.invariants and is_isomorphic(X, Y) for Y in ys) for X in xs)


@pytest.mark.parametrize(
    "name, length, count",
    [("loop", 4, 9), ("a2", 4, 22), ("three", 3, 36), ("kronecker", 2, 11)],
)
def test_enumeration_matches_brute_force(name, length, count, request):
    A = request.getfixturevalue(name)
    U = enumerate_modules(A, length)
    brute = brute_force_modules(A, length)
    # the brute force lists nonzero classes only
    assert len(U) == count
    assert same_classes(U.nonzero(), brute)


def test_indecomposables_match_brute_force(three):
    U = enumerate_modules(three, 3)
    brute = brute_force_modules(three, 3, indecomposable_only=True)
    assert same_classes(U.indecomposables(), brute)


def test_loop_universe_is_sums_of_two_classes(loop):
    U = enumerate_modules(loop, 4)
    assert sorted(M.loewy_label() for M in U.indecomposables()) == ["1", "1/1"]


def test_module_from_arrows_checks_relations(three):
    with pytest.raises(InvalidModule):
        module_from_arrows(three, {"3": 1}, {"beta": [[1]]})


def test_kronecker_family_distinct(kronecker):
    fam = [M for _, M in catalog.kronecker_family(kronecker)]
    for i, X in enumerate(fam):
        for Y in fam[i + 1:]:
            assert not is_isomorphic(X, Y)
