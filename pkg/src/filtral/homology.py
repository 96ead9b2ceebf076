"""Projective covers, syzygies, projective/injective dimension, Ext, tensor and Tor."""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .errors import AlgebraMismatch
from .module import (
    Module,
    Morphism,
    Submodule,
    canonical_modules,
    decompose,
    direct_sum,
    hom_matrices,
    is_isomorphic,
    quotient,
)

DEFAULT_CUTOFF = 12


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class PdVerdict:
    """``finite`` with ``n``; ``infinite`` with a witness ``(i, j)``; or ``unknown`` at ``cutoff``.

    The infinite witness means an indecomposable summand of ``Omega^i M`` is
    isomorphic to a summand of ``Omega^j M`` and sits on a syzygy cycle, so
    ``Omega^k M`` never vanishes.
    """

    kind: str
    n: int | None = None
    witness: tuple[int, int] | None = None
    cutoff: int | None = None

    @classmethod
    def finite(cls, n: int) -> "PdVerdict":
        return cls("finite", n=n)

    @classmethod
    def infinite(cls, i: int, j: int) -> "PdVerdict":
        return cls("infinite", witness=(i, j))

    @classmethod
    def unknown(cls, cutoff: int) -> "PdVerdict":
        return cls("unknown", cutoff=cutoff)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def at_most(self, n: int) -> bool | None:
        """Three-valued ``pd <= n``."""
        if self.kind == "finite":
            return self.n <= n
        if self.kind == "infinite":
            return False
        return None

    def to_dict(self) -> dict:
        if self.kind == "finite":
            return {"kind": "finite", "n": self.n}
        if self.kind == "infinite":
            return {"kind": "infinite", "witness": list(self.witness)}
        return {"kind": "unknown", "cutoff": self.cutoff}

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"Finite({self.n})"
        if self.kind == "infinite":
            return f"Infinite{self.witness}"
        return f"Unknown({self.cutoff})"


# -- projective covers -------------------------------------------------------------


@dataclass
class Cover:
    """Projective cover ``P -> M`` with ``P = P_{v_1} + ... + P_{v_k}``."""

    morphism: Morphism
    vertices: list[int]

    @property
    def projective(self) -> Module:
        return self.morphism.source


def top_generators(M: Module) -> list[tuple[int, np.ndarray]]:
    """Vectors ``v`` in ``M e_i`` whose classes form a basis of ``top M``, grouped by vertex."""
    p = M.p
    rad = M.radical.basis
    out = []
    for i in range(M.algebra.n_vertices):
        part = M.vertex_part(la.identity(M.dim), i)
        span = M.vertex_part(rad, i)
        for v in part:
            if not la.in_span(span, v, p):
                out.append((i, v.copy()))
                span = la.span_sum(span, v.reshape(1, -1), p)
    return out


def map_from_projective(P_i: Module, i: int, v: np.ndarray, M: Module) -> np.ndarray:
    """Matrix of ``P_i -> M`` sending ``e_i`` to ``v`` (``v`` must lie in ``M e_i``)."""
    A = M.algebra
    incl = _projective_embedding(A, i)
    return np.array([v @ M.rep(x) % M.p for x in incl]).reshape(P_i.dim, M.dim)


def _projective_embedding(A: Algebra, i: int) -> np.ndarray:
    """Rows: basis of ``P_i`` as elements of ``A``."""
    cache = A.__dict__.setdefault("_proj_embed", {})
    if i not in cache:
        rows = np.array([A.mul(A.idempotents[i], b) for b in la.identity(A.dim)])
        cache[i] = la.row_space(rows, A.p)
    return cache[i]


def projective_cover(M: Module) -> Cover:
    A = M.algebra
    projs = canonical_modules(A)[0]
    gens = top_generators(M)
    if not gens:
        from .module import zero_module

        Z = zero_module(A)
        return Cover(Morphism(Z, M, la.zeros(0, M.dim), check=False), [])
    parts = [projs[i] for i, _ in gens]
    P = direct_sum(*parts)
    mats = [map_from_projective(projs[i], i, v, M) for i, v in gens]
    F = np.concatenate(mats).reshape(P.dim, M.dim)
    return Cover(Morphism(P, M, F, check=False), [i for i, _ in gens])


def syzygy(M: Module) -> tuple[Module, Morphism, Cover]:
    """``Omega M`` with its inclusion into the projective cover."""
    cov = projective_cover(M)
    ker = cov.morphism.kernel()
    return ker.as_module(), ker.inclusion(), cov


def is_projective(M: Module) -> bool:
    return M.dim == 0 or syzygy(M)[0].dim == 0


@dataclass
class Resolution:
    target: Module
    terms: list[Module] = field(default_factory=list)
    differentials: list[Morphism] = field(default_factory=list)
    syzygies: list[Module] = field(default_factory=list)
    minimal: bool = True

    def problems(self) -> list[str]:
        out = []
        p = self.target.p
        for k, d in enumerate(self.differentials):
            if k + 1 < len(self.differentials):
                nxt = self.differentials[k + 1]
                if (nxt.matrix @ d.matrix % p).any():
                    out.append(f"d{k} d{k + 1} != 0")
                if la.rank(nxt.matrix, p) != d.source.dim - d.rank:
                    out.append(f"not exact at term {k}")
            if k > 0:
                rad = d.target.radical
                if not rad.contains(d.image()):
                    out.append(f"d{k} does not land in the radical")
        return out


def minimal_resolution(M: Module, length: int) -> Resolution:
    """Terms ``P_0, ..., P_length`` (stopping early when a syzygy vanishes).

    ``differentials[0]`` is the cover ``P_0 -> M`` and ``differentials[k]`` maps
    ``P_k -> P_{k-1}``.
    """
    res = Resolution(M)
    cur = M
    prev_incl: Morphism | None = None
    for _ in range(length + 1):
        if cur.dim == 0:
            break
        omega, incl, cov = syzygy(cur)
        res.terms.append(cov.projective)
        d = cov.morphism if prev_incl is None else cov.morphism.then(prev_incl)
        res.differentials.append(d)
        res.syzygies.append(omega)
        prev_incl = incl
        cur = omega
    return res


# -- isomorphism classes and the syzygy graph ------------------------------------


class IsoRegistry:
    """Per-algebra registry of isomorphism classes of indecomposables (thread safe)."""

    def __init__(self):
        self._lock = threading.RLock()
        self._buckets: dict[tuple, list[int]] = {}
        self.reps: list[Module] = []
        self.syzygy_children: dict[int, list[int]] = {}

    def classify(self, X: Module) -> int:
        inv = X.invariants
        with self._lock:
            for cid in self._buckets.get(inv, []):
                if is_isomorphic(X, self.reps[cid]):
                    return cid
            cid = len(self.reps)
            self.reps.append(X)
            self._buckets.setdefault(inv, []).append(cid)
            return cid

    def children(self, cid: int) -> list[int]:
        with self._lock:
            got = self.syzygy_children.get(cid)
            if got is not None:
                return got
            omega = syzygy(self.reps[cid])[0]
            kids = [self.classify(Y) for Y in decompose(omega)] if omega.dim else []
            self.syzygy_children[cid] = kids
            return kids


def registry(A: Algebra) -> IsoRegistry:
    reg = A.__dict__.get("_iso_registry")
    if reg is None:
        reg = A.__dict__.setdefault("_iso_registry", IsoRegistry())
    return reg


def proj_dim(M: Module, cutoff: int = DEFAULT_CUTOFF) -> PdVerdict:
    """Projective dimension by exploring the syzygy graph of indecomposable summands.

    Nodes are isomorphism classes; ``X -> Y`` when ``Y`` is a summand of
    ``Omega X``. A cycle reachable within ``cutoff`` steps proves infinite
    dimension; a fully explored acyclic graph gives the exact value.
    """
    if M.dim == 0:
        return PdVerdict.finite(0)
    reg = registry(M.algebra)
    roots = sorted({reg.classify(X) for X in decompose(M)})
    depth: dict[int, int] = {r: 0 for r in roots}
    queue = deque(roots)
    edges: dict[int, list[int]] = {}
    truncated = False
    while queue:
        c = queue.popleft()
        if depth[c] >= cutoff:
            truncated = True
            continue
        kids = reg.children(c)
        edges[c] = kids
        for k in kids:
            if k not in depth:
                depth[k] = depth[c] + 1
                queue.append(k)
    cyc = _cycle_witness(edges, depth)
    if cyc is not None:
        return PdVerdict.infinite(*cyc)
    if truncated:
        return PdVerdict.unknown(cutoff)
    memo: dict[int, int] = {}

    def longest(c: int) -> int:
        if c not in memo:
            memo[c] = 0 if not edges[c] else 1 + max(longest(k) for k in edges[c])
        return memo[c]

    return PdVerdict.finite(max(longest(r) for r in roots))


def _cycle_witness(edges: dict[int, list[int]], depth: dict[int, int]):
    """``(i, i + L)`` minimizing ``(i, L)`` over classes on a cycle, or None."""
    best = None
    for c in edges:
        # shortest cycle through c by BFS over explored edges
        dist = {c: 0}
        q = deque([c])
        found = None
        while q and found is None:
            u = q.popleft()
            for w in edges.get(u, []):
                if w == c:
                    found = dist[u] + 1
                    break
                if w not in dist and w in edges:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if found is not None:
            cand = (depth[c], found)
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    return best[0], best[0] + best[1]


def inj_dim(M: Module, cutoff: int = DEFAULT_CUTOFF) -> PdVerdict:
    """Injective dimension as the projective dimension of ``D M`` over the opposite algebra."""
    return proj_dim(M.dual(), cutoff)


# -- Ext ----------------------------------------------------------------------------


def _restriction_rank(incl: np.ndarray, P: Module, N: Module, p: int) -> int:
    """Rank of ``Hom(P, N) -> Hom(Omega, N)``, ``phi -> incl @ phi``."""
    hs = hom_matrices(P, N)
    if not hs or incl.shape[0] == 0:
        return 0
    rows = np.array([(incl @ H % p).ravel() for H in hs])
    return la.rank(rows, p)


def ext_dim(n: int, M: Module, N: Module) -> int:
    """``dim Ext^n(M, N) = dim Hom(Omega^n M, N) - rank(Hom(P_{n-1}, N) -> Hom(Omega^n M, N))``."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules live over different algebras")
    if n == 0:
        return len(hom_matrices(M, N))
    cur = M
    for _ in range(n - 1):
        cur = syzygy(cur)[0]
        if cur.dim == 0:
            return 0
    omega, incl, cov = syzygy(cur)
    if omega.dim == 0:
        return 0
    return len(hom_matrices(omega, N)) - _restriction_rank(incl.matrix, cov.projective, N, M.p)


# -- lifting through projective covers ----------------------------------------------


def lift_to_covers(f: Morphism, cov_src: Cover, cov_tgt: Cover) -> np.ndarray:
    """``G : P_src -> P_tgt`` with ``G @ pi_tgt == pi_src @ f``."""
    p = f.source.p
    P, Q = cov_src.projective, cov_tgt.projective
    want = (cov_src.morphism.matrix @ f.matrix % p).ravel()
    hs = hom_matrices(P, Q)
    if not hs:
        return la.zeros(P.dim, Q.dim)
    rows = np.array([(H @ cov_tgt.morphism.matrix % p).ravel() for H in hs])
    coeffs = la.solve(rows, want, p)[0]
    return np.tensordot(coeffs, np.array(hs), axes=1) % p


def restrict_to_kernels(G: np.ndarray, inc_src: np.ndarray, inc_tgt: np.ndarray, p: int) -> np.ndarray:
    """``H`` with ``inc_src @ G == H @ inc_tgt``."""
    if inc_src.shape[0] == 0:
        return la.zeros(0, inc_tgt.shape[0])
    return la.solve(inc_tgt, inc_src @ G % p, p)


# -- bimodules, tensor and Tor -----------------------------------------------------


class Bimodule:
    """A ``B``-``A`` bimodule on row vectors.

    ``left[b]`` is the matrix of ``t -> b t`` (so ``left[b b'] = left[b'] @ left[b]``)
    and ``right[a]`` the matrix of ``t -> t a``.
    """

    def __init__(self, left_algebra: Algebra, right_algebra: Algebra, left, right):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.left = np.asarray(left, dtype=la.DTYPE) % left_algebra.p
        self.right = np.asarray(right, dtype=la.DTYPE) % right_algebra.p
        self.dim = self.right.shape[1]

    def violations(self) -> list[str]:
        p = self.right_algebra.p
        out = []
        for i, L in enumerate(self.left):
            for j, R in enumerate(self.right):
                if ((L @ R - R @ L) % p).any():
                    out.append(f"left {self.left_algebra.labels[i]} and right {self.right_algebra.labels[j]} do not commute")
        return out

    def right_module(self) -> Module:
        return Module(self.right_algebra, self.right, check=False)

    def left_mats_for(self, coords) -> np.ndarray:
        return np.tensordot(np.asarray(coords, dtype=la.DTYPE), self.left, axes=1) % self.left_algebra.p


@dataclass
class TensorProduct:
    """``X (x)_B T`` realized as a quotient of ``X (x)_k T``."""

    module: Module
    ambient: Module
    relations: Submodule
    projection: Morphism


def tensor_over(X: Module, T: Bimodule) -> TensorProduct:
    if X.algebra is not T.left_algebra:
        raise AlgebraMismatch("module algebra differs from the left algebra of the bimodule")
    A = T.right_algebra
    p = A.p
    x, t = X.dim, T.dim
    eye_x, eye_t = la.identity(x), la.identity(t)
    amb_act = np.array([np.kron(eye_x, R) for R in T.right]).reshape(A.dim, x * t, x * t) % p
    ambient = Module(A, amb_act, check=False)
    rows = []
    for g in X.algebra.generators:
        Rx = X.rep(g)
        L = T.left_mats_for(g)
        rows.append((np.kron(Rx, eye_t) - np.kron(eye_x, L)) % p)
    rel = la.row_space(np.concatenate(rows), p) if rows and x * t else la.zeros(0, x * t)
    sub = Submodule(ambient, rel, check=False)
    Q, proj = quotient(ambient, sub)
    return TensorProduct(Q, ambient, sub, proj)


def tensor_morphism(f: Morphism, T: Bimodule, src: TensorProduct | None = None, tgt: TensorProduct | None = None) -> Morphism:
    """``f (x) T`` between the tensor products."""
    src = src or tensor_over(f.source, T)
    tgt = tgt or tensor_over(f.target, T)
    p = T.right_algebra.p
    amb = np.kron(f.matrix, la.identity(T.dim)) % p
    comp = la.complement_columns(src.relations.pivots, src.ambient.dim)
    mat = amb[comp] @ tgt.projection.matrix % p
    return Morphism(src.module, tgt.module, mat.reshape(src.module.dim, tgt.module.dim), check=False)


@dataclass
class TorData:
    module: Module
    inclusion: Morphism  # Tor_1 -> Omega X (x) T
    omega: Module
    omega_incl: Morphism
    cover: Cover
    omega_tensor: TensorProduct


def tor1_data(X: Module, T: Bimodule) -> TorData:
    if X.algebra is not T.left_algebra:
        raise AlgebraMismatch("module algebra differs from the left algebra of the bimodule")
    omega, incl, cov = syzygy(X)
    ot = tensor_over(omega, T)
    pt = tensor_over(cov.projective, T)
    ker = tensor_morphism(incl, T, ot, pt).kernel()
    return TorData(ker.as_module(), ker.inclusion(), omega, incl, cov, ot)


def tor1_over(X: Module, T: Bimodule) -> Module:
    """``Tor_1^B(X, T) = ker(Omega X (x) T -> P (x) T)``."""
    return tor1_data(X, T).module


def tor1_morphism(f: Morphism, T: Bimodule, src: TorData | None = None, tgt: TorData | None = None) -> Morphism:
    src = src or tor1_data(f.source, T)
    tgt = tgt or tor1_data(f.target, T)
    p = T.right_algebra.p
    G = lift_to_covers(f, src.cover, tgt.cover)
    H = restrict_to_kernels(G, src.omega_incl.matrix, tgt.omega_incl.matrix, p)
    h = Morphism(src.omega, tgt.omega, H, check=False)
    ht = tensor_morphism(h, T, src.omega_tensor, tgt.omega_tensor)
    img = src.inclusion.matrix @ ht.matrix % p
    mat = restrict_to_kernels(img, la.identity(img.shape[0]), tgt.inclusion.matrix, p) if img.shape[0] else la.zeros(0, tgt.module.dim)
    return Morphism(src.module, tgt.module, mat.reshape(src.module.dim, tgt.module.dim), check=False)
