"""Small bound quiver algebras and modules used as worked fixtures.

* ``loop``: one vertex with a loop ``alpha``, ``alpha^2 = 0``.
* ``a2``: the path algebra of ``1 -> 2``.
* ``six``: six vertices with two commutativity squares and nilpotent loops at 5 and 6.
* ``kronecker_loop``: ``g: 1 -> 2``, ``a, b: 2 -> 1`` with ``ga = gb = ag = 0``; it carries a
  one-parameter family of length-two modules of projective dimension one.
* ``three``: ``alpha: 1 -> 3``, loop ``beta`` at 3, ``gamma: 2 -> 3`` with ``alpha beta = beta^2 = 0``.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .algebra import Algebra, Arrow, QuiverPresentation, build_quiver_algebra
from .enumerate import module_from_arrows
from .field import PrimeField
from .filtration import Filtration, chain_from_generators
from .homology import _projective_embedding
from .module import Module, Submodule, canonical_modules, quotient


def _pres(vertices, arrows, relations=()):
    return QuiverPresentation(list(vertices), [Arrow(*a) for a in arrows], [list(r) for r in relations])


def loop_algebra(p: int = 2) -> Algebra:
    pres = _pres(["1"], [("alpha", "1", "1")], [[(1, ("alpha", "alpha"))]])
    return build_quiver_algebra(pres, PrimeField(p), name="loop")


def a2_algebra(p: int = 2) -> Algebra:
    return build_quiver_algebra(_pres(["1", "2"], [("a", "1", "2")]), PrimeField(p), name="a2")


def semisimple_algebra(n: int = 2, p: int = 2) -> Algebra:
    return build_quiver_algebra(_pres([str(i + 1) for i in range(n)], []), PrimeField(p), name=f"k^{n}")


def six_algebra(p: int = 2) -> Algebra:
    m1 = p - 1
    arrows = [
        ("al", "1", "2"), ("be", "1", "4"), ("ga", "2", "3"), ("de", "2", "5"),
        ("ep", "4", "5"), ("ze", "3", "6"), ("et", "5", "6"), ("th", "5", "5"), ("io", "6", "6"),
    ]
    rels = [
        [(1, ("al", "de")), (m1, ("be", "ep"))],
        [(1, ("ga", "ze")), (m1, ("de", "et"))],
    ] + [[(1, w)] for w in [("de", "th"), ("ep", "th"), ("th", "th"), ("th", "et"), ("ze", "io"), ("io", "io"), ("et", "io")]]
    pres = _pres(["1", "2", "3", "4", "5", "6"], arrows, rels)
    return build_quiver_algebra(pres, PrimeField(p), name="six")


def kronecker_loop_algebra(p: int = 3) -> Algebra:
    arrows = [("g", "1", "2"), ("a", "2", "1"), ("b", "2", "1")]
    rels = [[(1, ("g", "a"))], [(1, ("g", "b"))], [(1, ("a", "g"))]]
    return build_quiver_algebra(_pres(["1", "2"], arrows, rels), PrimeField(p), name="kronecker_loop")


def three_algebra(p: int = 2) -> Algebra:
    arrows = [("alpha", "1", "3"), ("beta", "3", "3"), ("gamma", "2", "3")]
    rels = [[(1, ("alpha", "beta"))], [(1, ("beta", "beta"))]]
    return build_quiver_algebra(_pres(["1", "2", "3"], arrows, rels), PrimeField(p), name="three")


# -- modules from paths --------------------------------------------------------------


def path_vector(A: Algebra, vertex: str, label: str) -> np.ndarray:
    """Coordinates of the path ``label`` (or ``e<vertex>``) in ``P_vertex``."""
    i = A.vertex_labels.index(vertex)
    emb = _projective_embedding(A, i)
    return la.solve(emb, A.element(label).reshape(1, -1), A.p)[0]


def projective(A: Algebra, vertex: str) -> Module:
    return canonical_modules(A)[0][A.vertex_labels.index(vertex)]


def path_submodule(A: Algebra, vertex: str, labels: list[str]) -> Submodule:
    P = projective(A, vertex)
    rows = np.array([path_vector(A, vertex, l) for l in labels]).reshape(len(labels), P.dim)
    return P.generated(rows)


def cyclic_quotient(A: Algebra, vertex: str, kill: list[str], name: str = "") -> Module:
    """``P_vertex`` modulo the submodule generated by the listed paths."""
    P = projective(A, vertex)
    Q, _ = quotient(P, path_submodule(A, vertex, kill)) if kill else (P, None)
    if name:
        Q.name = name
    return Q


def six_boundary_modules(A: Algebra) -> list[Module]:
    """Seven modules of finite projective dimension without proper nonzero submodules of that kind."""
    return [
        cyclic_quotient(A, "1", ["al"], "1/4"),
        cyclic_quotient(A, "2", ["ga"], "2/5"),
        cyclic_quotient(A, "3", [], "3/6"),
        cyclic_quotient(A, "1", ["be", "al*de"], "1/2/3"),
        cyclic_quotient(A, "4", [], "4/5/6"),
        cyclic_quotient(A, "5", [], "5/5 6"),
        cyclic_quotient(A, "6", [], "6/6"),
    ]


def six_p1_chains(A: Algebra) -> tuple[list[Submodule], list[Submodule]]:
    """Two chains of ``P_1`` with factors among the seven modules, of lengths 2 and 3."""
    P = projective(A, "1")
    v = lambda l: path_vector(A, "1", l)
    short = chain_from_generators(P, [v("be")])
    long = chain_from_generators(P, [v("al*ga"), v("al")])
    return short, long


def kronecker_family(A: Algebra) -> list[tuple[tuple[int, int], Module]]:
    """Length-two modules with top ``S_2``, socle ``S_1`` and ``g`` acting by zero, one per point of P^1(F_p)."""
    p = A.p
    points = [(1, c) for c in range(p)] + [(0, 1)]
    out = []
    for x, y in points:
        M = module_from_arrows(A, {"1": 1, "2": 1}, {"a": [[x]], "b": [[y]]}, name=f"Y({x}:{y})")
        out.append(((x, y), M))
    return out


def three_m(A: Algebra) -> Module:
    """The module with top ``1 2 3`` and socle ``3 3`` (dimension vector (1, 1, 3))."""
    # vertex 3 basis: x (top), s1, s2 (socle)
    alpha = [[0], [1], [0]]
    beta = [[0, 0, 0], [0, 0, 0], [1, 0, 0]]
    gamma = [[0], [1], [1]]
    return module_from_arrows(A, {"1": 1, "2": 1, "3": 3}, {"alpha": alpha, "beta": beta, "gamma": gamma}, name="1 2 3/3 3")


def three_m_filtration(M: Module) -> Filtration:
    """``0 < [1/3] < [1/3] + [3/3] < M``."""
    v1 = la.identity(M.dim)[0]
    x = la.identity(M.dim)[2]
    return Filtration.from_chain(M, chain_from_generators(M, [v1, x]), certificate="under")


def three_m_cofiltration(M: Module) -> Filtration:
    """``M -> [2 3/3] -> 2 -> 0``."""
    e = la.identity(M.dim)
    Q1, f1 = quotient(M, M.generated(e[0:1]))
    x_img = (e[2:3] @ f1.matrix) % M.p
    Q2, f2 = quotient(Q1, Q1.generated(x_img))
    Q3, f3 = quotient(Q2, Q2.whole())
    return Filtration.from_epis(M, [f1, f2, f3], certificate="under")


def a2_tilting(A: Algebra) -> Module:
    """``P_1 + S_1`` on ``1 -> 2``."""
    from .module import direct_sum

    projs, _, simples = canonical_modules(A)
    T = direct_sum(projs[0], simples[0])
    T.name = "P1+S1"
    return T


ALGEBRAS = {
    "loop": loop_algebra,
    "a2": a2_algebra,
    "six": six_algebra,
    "kronecker_loop": kronecker_loop_algebra,
    "three": three_algebra,
}
