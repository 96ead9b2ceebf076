"""Filtrations (chains of submodules) and cofiltrations (chains of epimorphisms)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import InvalidFiltration
from .module import Module, Morphism, Submodule, is_isomorphic, quotient

FILTRATION = "filtration"
COFILTRATION = "cofiltration"


@dataclass
class Factor:
    module: Module
    certificate: dict = field(default_factory=dict)


@dataclass
class Filtration:
    """``kind == "filtration"``: ``chain`` is ``0 = M_0 < M_1 < ... < M_n = M`` and
    factor ``i`` is ``M_i / M_{i-1}``.

    ``kind == "cofiltration"``: ``epis`` is ``M = N_0 -> N_1 -> ... -> N_n = 0``
    and factor ``i`` is the kernel of the ``i``-th epimorphism.
    """

    kind: str
    module: Module
    chain: list[Submodule] = field(default_factory=list)
    epis: list[Morphism] = field(default_factory=list)
    factors: list[Factor] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.factors)

    def factor_modules(self) -> list[Module]:
        return [f.module for f in self.factors]

    @classmethod
    def from_chain(cls, M: Module, chain: list[Submodule], certificate=None) -> "Filtration":
        factors = []
        for lo, hi in zip(chain, chain[1:]):
            sub = Submodule(hi.as_module(), _coords_in(hi, lo), check=False)
            Q, _ = quotient(hi.as_module(), sub)
            factors.append(Factor(Q, _cert(certificate)))
        return cls(FILTRATION, M, chain=list(chain), factors=factors)

    @classmethod
    def from_epis(cls, M: Module, epis: list[Morphism], certificate=None) -> "Filtration":
        factors = []
        for f in epis:
            factors.append(Factor(f.kernel().as_module(), _cert(certificate)))
        return cls(COFILTRATION, M, epis=list(epis), factors=factors)

    def problems(self) -> list[str]:
        out = []
        M = self.module
        if not self.factors:
            if M.dim:
                out.append("empty filtration of a nonzero module")
            return out
        if self.kind == FILTRATION:
            ch = self.chain
            if len(ch) != len(self.factors) + 1:
                out.append("chain and factor counts disagree")
                return out
            if ch[0].dim != 0 or ch[0].parent is not M:
                out.append("chain does not start at 0")
            if ch[-1].dim != M.dim:
                out.append("chain does not end at the module")
            for k, (lo, hi) in enumerate(zip(ch, ch[1:]), start=1):
                if hi.parent is not M:
                    out.append(f"step {k} is not a submodule of the module")
                    continue
                if not hi.contains(lo) or hi.dim <= lo.dim:
                    out.append(f"step {k} is not a strict inclusion")
                    continue
                sub = Submodule(hi.as_module(), _coords_in(hi, lo), check=False)
                Q, _ = quotient(hi.as_module(), sub)
                if not is_isomorphic(Q, self.factors[k - 1].module):
                    out.append(f"factor {k} is not isomorphic to M_{k}/M_{k - 1}")
        elif self.kind == COFILTRATION:
            if len(self.epis) != len(self.factors):
                out.append("epimorphism and factor counts disagree")
                return out
            cur = M
            for k, f in enumerate(self.epis, start=1):
                if f.source is not cur:
                    out.append(f"epimorphism {k} does not start where the previous one ended")
                if not f.is_homomorphism():
                    out.append(f"map {k} is not a module homomorphism")
                if not f.is_epi():
                    out.append(f"map {k} is not surjective")
                if f.is_mono():
                    out.append(f"map {k} is not proper (zero kernel)")
                K = f.kernel().as_module()
                if not is_isomorphic(K, self.factors[k - 1].module):
                    out.append(f"factor {k} is not isomorphic to the kernel of map {k}")
                cur = f.target
            if cur.dim != 0:
                out.append("cofiltration does not end at 0")
        else:
            out.append(f"unknown kind {self.kind!r}")
        for k, fac in enumerate(self.factors, start=1):
            if fac.module.dim == 0:
                out.append(f"factor {k} is zero")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def validate(self) -> "Filtration":
        probs = self.problems()
        if probs:
            raise InvalidFiltration("; ".join(probs))
        return self


def _cert(certificate):
    if certificate is None:
        return {}
    if isinstance(certificate, str):
        return {"class": certificate}
    return dict(certificate)


def _coords_in(hi: Submodule, lo: Submodule) -> np.ndarray:
    """Coordinates of ``lo``'s basis inside the realized module of ``hi``."""
    # hi's rref basis has an identity block on its pivot columns
    return lo.basis[:, hi.pivots]


def chain_from_generators(M: Module, steps: list) -> list[Submodule]:
    """``0 < <g_1>A < <g_1, g_2>A < ...`` from vectors, closing with ``M``."""
    chain = [M.zero_sub()]
    rows = la.zeros(0, M.dim)
    for g in steps:
        rows = np.concatenate([rows, la.asmat(g, M.p, M.dim)])
        chain.append(M.generated(rows))
    if chain[-1].dim < M.dim:
        chain.append(M.whole())
    return chain


def convert(F: Filtration) -> Filtration:
    """Filtration <-> cofiltration with the same factors in the same order.

    A chain ``M_i`` becomes the epimorphisms ``M/M_{i-1} -> M/M_i``; a chain of
    epimorphisms becomes the kernels of the composites ``M -> N_i``.
    """
    F.validate()
    M = F.module
    p = M.p
    if F.kind == FILTRATION:
        epis = []
        prev: Module = M
        for k, sub in enumerate(F.chain[1:], start=1):
            Q, proj = quotient(M, sub)
            if k == 1:
                mat = proj.matrix
            else:
                # lift the basis of M/M_{k-1} to M, then project to M/M_k
                comp = la.complement_columns(F.chain[k - 1].pivots, M.dim)
                mat = la.identity(M.dim)[comp] @ proj.matrix % p
            epis.append(Morphism(prev, Q, mat.reshape(prev.dim, Q.dim), check=False))
            prev = Q
        factors = [Factor(f.module, dict(f.certificate)) for f in F.factors]
        return Filtration(COFILTRATION, M, epis=epis, factors=factors)
    composite = M.identity()
    chain = [M.zero_sub()]
    for f in F.epis:
        composite = composite.then(f)
        chain.append(composite.kernel())
    factors = [Factor(f.module, dict(f.certificate)) for f in F.factors]
    return Filtration(FILTRATION, M, chain=chain, factors=factors)


def theta_filtration(M: Module, theta: list[Module], cap: int | None = None, certificate=None) -> Filtration | None:
    """A filtration of ``M`` whose factors are isomorphic to members of ``theta``, or None.

    Exhaustive over the submodule lattice of ``M``: ``f(L)`` is a chain for ``L``
    when some ``K < L`` has ``L/K`` isomorphic to a member and ``f(K)`` exists.
    Members are tried by descending length, submodules in lattice order.
    Results are memoized on the echelon key of ``L``.
    """
    from .module import DEFAULT_SUBMODULE_CAP, all_submodules

    if M.dim == 0:
        return Filtration(FILTRATION, M, chain=[M.zero_sub()], factors=[])
    members = sorted([X for X in theta if X.dim], key=lambda X: -X.dim)
    if not members:
        return None
    lattice = all_submodules(M, cap or DEFAULT_SUBMODULE_CAP)
    memo: dict[bytes, list | None] = {}
    zero = lattice[0]
    memo[zero.key] = [(zero, None)]

    def search(L: Submodule):
        if L.key in memo:
            return memo[L.key]
        memo[L.key] = None
        Lm = L.as_module()
        for X in members:
            want = L.dim - X.dim
            if want < 0:
                continue
            for K in lattice:
                if K.dim != want or not L.contains(K):
                    continue
                Q, _ = quotient(Lm, Submodule(Lm, _coords_in(L, K), check=False))
                if Q.invariants != X.invariants or not is_isomorphic(Q, X):
                    continue
                rest = search(K)
                if rest is not None:
                    memo[L.key] = rest + [(L, X)]
                    return memo[L.key]
        return None

    found = search(lattice[-1])
    if found is None:
        return None
    chain = [s for s, _ in found]
    return Filtration.from_chain(M, chain, certificate=certificate)
