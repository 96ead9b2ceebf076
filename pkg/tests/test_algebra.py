import numpy as np
import pytest

from filtral import catalog
from filtral.algebra import Arrow, QuiverPresentation, build_quiver_algebra, structure_constant_algebra, validate_algebra
from filtral.errors import DegenerateRelation, NonAdmissibleIdeal
from filtral.field import PrimeField


@pytest.mark.parametrize(
    "factory, dim",
    [
        (catalog.loop_algebra, 2),  # e, alpha
        (catalog.a2_algebra, 3),  # e1, e2, a
        (catalog.three_algebra, 7),  # three vertices, three arrows, gamma*beta
        (lambda: catalog.kronecker_loop_algebra(3), 6),  # ..., b*g survives
    ],
)
def test_dimension_by_hand_count(factory, dim):
    A = factory()
    assert A.dim == dim
    assert validate_algebra(A).ok


def test_six_is_associative(six):
    assert validate_algebra(six).ok
    assert six.n_vertices == 6


def test_path_convention(a2):
    # paths read left to right: e1 * a = a, a * e2 = a, a * e1 = 0
    e1, e2, a = (a2.element(x) for x in ("e1", "e2", "a"))
    assert np.array_equal(a2.mul(e1, a), a)
    assert np.array_equal(a2.mul(a, e2), a)
    assert not a2.mul(a, e1).any()


def test_empty_relations_give_path_algebra():
    pres = QuiverPresentation(["1", "2", "3"], [Arrow("x", "1", "2"), Arrow("y", "2", "3")], [])
    A = build_quiver_algebra(pres, PrimeField(5))
    assert A.dim == 6


def test_unknown_arrow_in_relation():
    pres = QuiverPresentation(["1"], [Arrow("x", "1", "1")], [[(1, ("x", "z"))]])
    with pytest.raises(DegenerateRelation, match="z"):
        build_quiver_algebra(pres, PrimeField(2))


def test_non_nilpotent_ideal_rejected():
    pres = QuiverPresentation(["1"], [Arrow("x", "1", "1")], [], nilpotency_bound=4)
    with pytest.raises(NonAdmissibleIdeal):
        build_quiver_algebra(pres, PrimeField(2))


def test_structure_constant_round_trip(a2):
    B = structure_constant_algebra(a2.field, a2.struct, a2.unit, a2.idempotents)
    assert validate_algebra(B).ok
    assert B.dim == 3 and B.n_vertices == 2


def test_broken_table_reported():
    t = np.zeros((1, 1, 1), dtype=np.int64)
    A = structure_constant_algebra(PrimeField(2), t, [1], [[1]])
    rep = validate_algebra(A)
    assert not rep.ok and any("unit" in v for v in rep.violations)


def test_opposite_is_involutive(three):
    assert three.opposite().opposite() is three
    assert validate_algebra(three.opposite()).ok
