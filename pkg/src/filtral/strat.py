"""Standard and costandard modules for an ordering of the vertices, and theta-filtrations.

For an ordering ``v_1 < v_2 < ... < v_n`` of the vertices:

* ``Delta_i = P_i / sum_{j > i} tr_{P_j}(P_i)``: the largest quotient of ``P_i``
  without composition factors ``S_j``, ``j > i``;
* ``Delta*_i = Delta_i / tr_{P_i}(rad Delta_i)``: ``S_i`` then occurs once;
* ``Nabla_i`` and ``Nabla*_i``: the same constructions over the opposite algebra, dualized,
  which gives the largest submodules of ``I_i`` with the dual properties.

The trace of ``P_j`` in ``M`` is the submodule generated by ``M e_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .config import Budget, default_budget
from .errors import SearchCapExceeded
from .filtration import Filtration, theta_filtration
from .module import Module, Submodule, canonical_modules, hom_matrices, is_isomorphic, quotient
from .subcat import (
    OVER,
    UNDER,
    FiltClosure,
    SubcatSpec,
    check_closure,
    dedup,
    enumerate_boundary,
    local_sequences,
    _ses_modules,
)

DELTA, DELTA_STAR, NABLA, NABLA_STAR, CUSTOM = "delta", "delta_star", "nabla", "nabla_star", "custom"


@dataclass
class ThetaFamily:
    kind: str
    ordering: list[int]
    members: list[Module]

    @property
    def side(self) -> str:
        """Boundary side the family is expected to realize."""
        return UNDER if self.kind in (NABLA, NABLA_STAR) else OVER

    def labels(self) -> list[str]:
        return [M.loewy_label() for M in self.members]


def vertex_trace(M: Module, basis: np.ndarray, vertices) -> Submodule:
    """Submodule generated by the ``e_j``-parts of the span of ``basis``, ``j`` in ``vertices``."""
    parts = [M.vertex_part(basis, j) for j in vertices]
    rows = np.concatenate(parts) if parts else la.zeros(0, M.dim)
    return M.generated(rows.reshape(-1, M.dim))


def _check_ordering(A: Algebra, ordering) -> list[int]:
    n = A.n_vertices
    if ordering is None:
        return list(range(n))
    order = [int(v) for v in ordering]
    if sorted(order) != list(range(n)):
        raise ValueError(f"ordering must be a permutation of 0..{n - 1}")
    return order


def _deltas(A: Algebra, order: list[int]) -> tuple[list[Module], list[Module]]:
    projs = canonical_modules(A)[0]
    rank = {v: k for k, v in enumerate(order)}
    deltas, stars = [], []
    for i, P in enumerate(projs):
        above = [j for j in range(A.n_vertices) if rank[j] > rank[i]]
        D, _ = quotient(P, vertex_trace(P, la.identity(P.dim), above))
        D.name = f"Delta{A.vertex_labels[i]}"
        Ds, _ = quotient(D, vertex_trace(D, D.radical.basis, [i]))
        Ds.name = f"Delta*{A.vertex_labels[i]}"
        deltas.append(D)
        stars.append(Ds)
    return deltas, stars


def standard_modules(A: Algebra, ordering=None) -> dict[str, ThetaFamily]:
    """The four families, indexed by vertex; ``ordering`` lists vertex indices from smallest to largest."""
    order = _check_ordering(A, ordering)
    d, ds = _deltas(A, order)
    od, ods = _deltas(A.opposite(), order)
    nab = [X.dual() for X in od]
    nabs = [X.dual() for X in ods]
    for k, (X, Y) in enumerate(zip(nab, nabs)):
        X.name = f"Nabla{A.vertex_labels[k]}"
        Y.name = f"Nabla*{A.vertex_labels[k]}"
    return {
        DELTA: ThetaFamily(DELTA, order, d),
        DELTA_STAR: ThetaFamily(DELTA_STAR, order, ds),
        NABLA: ThetaFamily(NABLA, order, nab),
        NABLA_STAR: ThetaFamily(NABLA_STAR, order, nabs),
    }


def family_filtration(M: Module, theta: ThetaFamily, cap: int | None = None) -> Filtration | None:
    return theta_filtration(M, theta.members, cap, certificate={"class": theta.kind})


def theta_spec(theta: ThetaFamily, budget: Budget | None = None) -> SubcatSpec:
    return SubcatSpec(f"F({theta.kind})", FiltClosure(theta.members, theta.kind), budget=budget)


# -- rigidity of the family ------------------------------------------------------------


def _combinations(hs: list[np.ndarray], p: int, cap: int):
    total = p ** len(hs)
    if total > cap:
        raise SearchCapExceeded("hom combinations", total, cap)
    stack = np.array(hs)
    for coeffs in itertools.product(range(p), repeat=len(hs)):
        if any(coeffs):
            yield np.tensordot(np.array(coeffs, dtype=la.DTYPE), stack, axes=1) % p


def non_invertible_maps(theta: ThetaFamily, cap: int = 1 << 16) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with a non-invertible epimorphism (Delta kinds) or monomorphism
    (Nabla kinds) from member ``i`` to member ``j``; exhaustive over each Hom space."""
    want_epi = theta.side == OVER
    bad = []
    mods = [X for X in theta.members if X.dim]
    for i, X in enumerate(mods):
        for j, Y in enumerate(mods):
            if want_epi and X.dim <= Y.dim:
                continue
            if not want_epi and X.dim >= Y.dim:
                continue
            target = Y.dim if want_epi else X.dim
            hs = hom_matrices(X, Y)
            if any(la.rank(F, X.p) == target for F in _combinations(hs, X.p, cap)):
                bad.append((i, j))
    return bad


def theta_boundary_check(theta: ThetaFamily, universe, budget: Budget | None = None) -> dict:
    """Hypothesis, closure and conclusion of the rigidity criterion on a universe.

    Delta kinds: epimorphisms between members are invertible, ``F(theta)`` is
    closed under kernels of epimorphisms, and ``over(F(theta)) = theta``.
    Nabla kinds use monomorphisms, cokernels of monomorphisms and ``under``.
    """
    budget = budget or default_budget()
    side = theta.side
    members = dedup([X for X in theta.members if X.dim])
    spec = theta_spec(theta, budget)
    bad = non_invertible_maps(theta)
    flag = "ker_epi" if side == OVER else "coker_mono"
    mods = [M for M in universe if M.dim]
    seqs = []
    in_class = [M for M in mods if spec.member(M).yes]
    per = max(1, budget.closure_samples // max(1, len(in_class)))
    for M in in_class:
        for L, K in local_sequences(M, per, budget.seed, budget.submodule_cap):
            seqs.append(_ses_modules(L, K))
    closure, witness = check_closure(spec, flag, seqs)
    found = enumerate_boundary(spec, side, mods).members
    in_universe = [X for X in members if X.dim <= max((M.dim for M in mods), default=0)]
    equal = len(found) == len(in_universe) and all(any(is_isomorphic(X, Y) for Y in in_universe if Y.invariants == X.invariants) for X in found)
    # a union containment that holds for any family of nonzero modules
    other = enumerate_boundary(spec, UNDER if side == OVER else OVER, mods).members
    contained = all(any(is_isomorphic(X, Y) for Y in members if Y.invariants == X.invariants) for X in found + other)
    hypothesis = not bad
    return {
        "kind": theta.kind,
        "ordering": list(theta.ordering),
        "members": theta.labels(),
        "side": side,
        "hypothesis_holds": hypothesis,
        "non_invertible": [list(b) for b in bad],
        "closure": flag,
        "closure_status": closure,
        "closure_samples": len(seqs),
        "boundary": sorted(X.loewy_label() for X in found),
        "boundary_equals_family": equal,
        "boundaries_inside_family": contained,
        "passes": bool(hypothesis and closure != "violated" and equal and contained),
    }
