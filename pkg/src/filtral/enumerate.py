"""Isomorphism classes of modules up to a length bound.

The main enumerator grows the universe by extensions: every module of length
``n + 1`` has a simple quotient ``S_i``, so it is the middle term of some
``0 -> K -> M -> S_i -> 0`` with ``K`` of length ``n``. Extension classes are
taken from ``Ext^1(S_i, K) = coker(Hom(P_i, K) -> Hom(Omega S_i, K))`` up to
scalars, and middle terms are built as pushouts.

For quiver algebras an independent brute-force source enumerates arrow
matrices directly; it is only feasible for tiny dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .errors import CapExceeded, InvalidModule
from .homology import syzygy
from .module import (
    Module,
    Submodule,
    _normalized_vectors,
    canonical_modules,
    decompose,
    hom_matrices,
    is_indecomposable,
    is_isomorphic,
    quotient,
    zero_module,
)

DEFAULT_UNIVERSE_CAP = 20_000


@dataclass
class Universe:
    """Iso-class representatives with fast lookup."""

    algebra: Algebra
    max_length: int
    modules: list[Module] = field(default_factory=list)
    _buckets: dict = field(default_factory=dict, repr=False)

    def find(self, M: Module) -> int | None:
        for k in self._buckets.get(M.invariants, []):
            if is_isomorphic(M, self.modules[k]):
                return k
        return None

    def add(self, M: Module) -> tuple[int, bool]:
        k = self.find(M)
        if k is not None:
            return k, False
        self.modules.append(M)
        self._buckets.setdefault(M.invariants, []).append(len(self.modules) - 1)
        return len(self.modules) - 1, True

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def of_length(self, n: int) -> list[Module]:
        return [M for M in self.modules if M.dim == n]

    def nonzero(self) -> list[Module]:
        return [M for M in self.modules if M.dim]

    def indecomposables(self) -> list[Module]:
        return [M for M in self.modules if M.dim and is_indecomposable(M)]


def extension_classes(S_index: int, K: Module) -> list[np.ndarray]:
    """Representatives ``psi : Omega S_i -> K`` of ``Ext^1(S_i, K)`` up to nonzero scalars (zero first)."""
    A = K.algebra
    S = canonical_modules(A)[2][S_index]
    omega, incl, cov = syzygy(S)
    if omega.dim == 0 or K.dim == 0:
        return [la.zeros(omega.dim, K.dim)]
    p = A.p
    psis = hom_matrices(omega, K)
    if not psis:
        return [la.zeros(omega.dim, K.dim)]
    flat = np.array([X.ravel() for X in psis])
    phis = hom_matrices(cov.projective, K)
    if phis:
        img = np.array([(incl.matrix @ F % p).ravel() for F in phis])
        coords = la.solve(flat, img, p)
        _, piv = la.rref(coords, p)
    else:
        piv = []
    comp = la.complement_columns(piv, len(psis))
    reps = [la.zeros(omega.dim, K.dim)]
    stack = np.array([psis[c] for c in comp]) if comp else None
    for u in _normalized_vectors(len(comp), p):
        reps.append(np.tensordot(np.array(u, dtype=la.DTYPE), stack, axes=1) % p)
    return reps


def pushout_extension(S_index: int, K: Module, psi: np.ndarray) -> Module:
    """Middle term of the extension of ``S_i`` by ``K`` classified by ``psi``."""
    A = K.algebra
    p = A.p
    S = canonical_modules(A)[2][S_index]
    omega, incl, cov = syzygy(S)
    P = cov.projective
    from .module import direct_sum

    E = direct_sum(K, P)
    if omega.dim == 0:
        return E
    rel = np.concatenate([psi, (-incl.matrix) % p], axis=1) % p
    sub = Submodule(E, la.row_space(rel, p), check=False)
    return quotient(E, sub)[0]


def enumerate_modules(A: Algebra, max_length: int, cap: int = DEFAULT_UNIVERSE_CAP) -> Universe:
    """All modules of length ``<= max_length`` up to isomorphism (zero module included)."""
    U = Universe(A, max_length)
    U.add(zero_module(A))
    simples = canonical_modules(A)[2]
    prev = []
    for S in simples:
        if max_length >= 1:
            k, new = U.add(S)
            if new:
                prev.append(U.modules[k])
    for n in range(1, max_length):
        layer = []
        for K in prev:
            for i in range(A.n_vertices):
                for psi in extension_classes(i, K):
                    M = pushout_extension(i, K, psi)
                    k, new = U.add(M)
                    if new:
                        layer.append(U.modules[k])
                        if len(U) > cap:
                            raise CapExceeded("modules", len(U), cap)
        prev = layer
    U.modules = _sorted_modules(U.modules)
    U._buckets = {}
    for k, M in enumerate(U.modules):
        U._buckets.setdefault(M.invariants, []).append(k)
    return U


def _sorted_modules(mods: list[Module]) -> list[Module]:
    # stable deterministic order: length, then Loewy label, then invariants
    return sorted(mods, key=lambda M: (M.dim, M.loewy_label(), repr(M.invariants)))


# -- quiver representations --------------------------------------------------------


def module_from_arrows(A: Algebra, dims: dict, arrows: dict, name: str = "", check: bool = True) -> Module:
    """Module from one matrix per arrow (rows index the target vertex, columns the source)."""
    pres = A.presentation
    if pres is None or A.words is None:
        raise InvalidModule("arrow matrices need a quiver presentation")
    p = A.p
    verts = pres.vertices
    d = [int(dims.get(v, 0)) for v in verts]
    off = np.concatenate([[0], np.cumsum(d)]).astype(int)
    n = int(off[-1])
    idx = {v: k for k, v in enumerate(verts)}
    gens: dict[str, np.ndarray] = {}
    for a in pres.arrows:
        s, t = idx[a.source], idx[a.target]
        mat = np.asarray(arrows.get(a.name, np.zeros((d[t], d[s]))), dtype=la.DTYPE).reshape(d[t], d[s]) % p
        R = la.zeros(n, n)
        R[off[s]:off[s + 1], off[t]:off[t + 1]] = mat.T
        gens[a.name] = R
    act = np.zeros((A.dim, n, n), dtype=la.DTYPE)
    for k, w in enumerate(A.words):
        if not w:
            # vertex idempotents come first, in vertex order
            act[k, off[k]:off[k + 1], off[k]:off[k + 1]] = la.identity(d[k])
        else:
            R = la.identity(n)
            for name_ in w:
                R = R @ gens[name_] % p
            act[k] = R
    return Module(A, act, name=name, check=check)


def brute_force_modules(A: Algebra, max_length: int, cap: int = 200_000, indecomposable_only: bool = False) -> list[Module]:
    """Every representation by arrow matrices with total dimension ``<= max_length``, up to iso."""
    pres = A.presentation
    p = A.p
    U = Universe(A, max_length)
    verts = pres.vertices
    checked = 0
    for total in range(1, max_length + 1):
        for dv in _compositions(total, len(verts)):
            dims = dict(zip(verts, dv))
            shapes = [(dims[a.target], dims[a.source]) for a in pres.arrows]
            sizes = [r * c for r, c in shapes]
            space = p ** sum(sizes)
            checked += space
            if checked > cap:
                raise CapExceeded("arrow tuples", checked, cap)
            for entries in itertools.product(range(p), repeat=sum(sizes)):
                mats, pos = {}, 0
                for a, (r, c), s in zip(pres.arrows, shapes, sizes):
                    mats[a.name] = np.array(entries[pos:pos + s], dtype=la.DTYPE).reshape(r, c)
                    pos += s
                M = module_from_arrows(A, dims, mats, check=False)
                if M.violations():
                    continue
                if indecomposable_only and not is_indecomposable(M):
                    continue
                U.add(M)
    return _sorted_modules(U.modules)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def summands_universe(U: Universe) -> list[Module]:
    """Indecomposable members of the universe, in universe order."""
    return [M for M in U.modules if M.dim and len(decompose(M)) == 1]
