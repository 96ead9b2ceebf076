"""Right modules over an :class:`~filtral.algebra.Algebra` as matrix representations.

Vectors are rows and the algebra acts on the right: ``v . b = v @ M.action[b]``
with ``action[x * y] = action[x] @ action[y]``. A morphism ``M -> N`` is a
``(M.dim, N.dim)`` matrix ``F`` with ``v -> v @ F``; it intertwines when
``M.action[b] @ F == F @ N.action[b]`` for every basis element ``b``.
A submodule is the row space of a reduced echelon basis.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .errors import AlgebraMismatch, InvalidModule, NotASubmodule, SearchCapExceeded, CapExceeded

DEFAULT_SWEEP_CAP = 1 << 20
DEFAULT_SUBMODULE_CAP = 100_000


class Module:
    def __init__(self, algebra: Algebra, action, name: str = "", check: bool = True):
        self.algebra = algebra
        p = algebra.p
        act = np.asarray(action, dtype=la.DTYPE)
        if act.ndim != 3 or act.shape[0] != algebra.dim or act.shape[1] != act.shape[2]:
            raise InvalidModule(f"action must have shape ({algebra.dim}, n, n), got {act.shape}")
        self.action = np.ascontiguousarray(act % p)
        self.dim = act.shape[1]
        self.name = name
        if check:
            problems = self.violations()
            if problems:
                raise InvalidModule("; ".join(problems[:5]))

    def __repr__(self) -> str:
        label = self.name or (self.loewy_label() if self.dim else "0")
        return f"Module[{label}]"

    @property
    def p(self) -> int:
        return self.algebra.p

    def violations(self) -> list[str]:
        A, p, n = self.algebra, self.algebra.p, self.dim
        out = []
        if n == 0:
            return out
        if (self.rep(A.unit) != la.identity(n)).any():
            out.append("unit does not act as the identity")
        lhs = np.einsum("iab,jbc->ijac", self.action, self.action) % p
        rhs = np.einsum("ijk,kac->ijac", A.struct, self.action) % p
        for i, j in np.argwhere((lhs != rhs).any(axis=(2, 3)))[:5]:
            out.append(f"action of {A.labels[i]}*{A.labels[j]} is not the product of the actions")
        return out

    def rep(self, a) -> np.ndarray:
        """Matrix of right multiplication by the algebra element with coordinates ``a``."""
        return np.tensordot(np.asarray(a, dtype=la.DTYPE), self.action, axes=1) % self.p

    @cached_property
    def gen_mats(self) -> np.ndarray:
        return _stack([self.rep(g) for g in self.algebra.generators], self.dim)

    @cached_property
    def rad_mats(self) -> np.ndarray:
        return _stack([self.rep(r) for r in self.algebra.radical], self.dim)

    @cached_property
    def idem_mats(self) -> np.ndarray:
        return _stack([self.rep(e) for e in self.algebra.idempotents], self.dim)

    # -- structure -------------------------------------------------------

    def submodule(self, rows) -> "Submodule":
        return Submodule(self, la.asmat(rows, self.p, self.dim))

    def generated(self, rows) -> "Submodule":
        """Smallest submodule containing the given vectors."""
        return Submodule(self, span_closure(self, la.asmat(rows, self.p, self.dim)), check=False)

    def zero_sub(self) -> "Submodule":
        return Submodule(self, la.zeros(0, self.dim), check=False)

    def whole(self) -> "Submodule":
        return Submodule(self, la.identity(self.dim), check=False)

    def radical_of(self, basis: np.ndarray) -> np.ndarray:
        """Basis of ``U . rad A`` for the subspace spanned by ``basis``."""
        if basis.shape[0] == 0 or self.rad_mats.shape[0] == 0:
            return la.zeros(0, self.dim)
        prods = np.concatenate([basis @ r % self.p for r in self.rad_mats])
        return la.row_space(prods, self.p)

    @cached_property
    def radical(self) -> "Submodule":
        return Submodule(self, self.radical_of(la.identity(self.dim)), check=False)

    @cached_property
    def socle(self) -> "Submodule":
        if self.rad_mats.shape[0] == 0:
            return self.whole()
        stacked = np.concatenate(list(self.rad_mats), axis=1)
        return Submodule(self, la.row_space(la.left_nullspace(stacked, self.p), self.p), check=False)

    def vertex_part(self, basis: np.ndarray, i: int) -> np.ndarray:
        if basis.shape[0] == 0:
            return basis
        return la.row_space(basis @ self.idem_mats[i] % self.p, self.p)

    def dim_vector_of(self, basis: np.ndarray) -> tuple[int, ...]:
        return tuple(self.vertex_part(basis, i).shape[0] for i in range(self.algebra.n_vertices))

    @cached_property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(int(la.rank(e, self.p)) for e in self.idem_mats)

    @property
    def length(self) -> int:
        # basic split algebras: every simple is one-dimensional
        return self.dim

    @cached_property
    def radical_layers(self) -> tuple[tuple[int, ...], ...]:
        layers = []
        cur = la.identity(self.dim)
        while cur.shape[0]:
            nxt = self.radical_of(cur)
            a, b = self.dim_vector_of(cur), self.dim_vector_of(nxt)
            layers.append(tuple(x - y for x, y in zip(a, b)))
            cur = nxt
        return tuple(layers)

    @cached_property
    def socle_layers(self) -> tuple[tuple[int, ...], ...]:
        layers = []
        cur: Module = self
        while cur.dim:
            soc = cur.socle
            layers.append(cur.dim_vector_of(soc.basis))
            cur = quotient(cur, soc)[0]
        return tuple(layers)

    def loewy_label(self) -> str:
        """Radical layers written top first, e.g. ``"1 2 3/3 3"``."""
        if self.dim == 0:
            return "0"
        vl = self.algebra.vertex_labels
        rows = []
        for layer in self.radical_layers:
            rows.append(" ".join(vl[i] for i, m in enumerate(layer) for _ in range(m)))
        return "/".join(rows)

    @cached_property
    def end_dim(self) -> int:
        return len(hom_matrices(self, self))

    @cached_property
    def invariants(self) -> tuple:
        """Isomorphism invariants used to bucket modules before exact comparison."""
        return (self.dim, self.dim_vector, self.radical_layers, self.socle_layers, self.end_dim)

    def is_zero(self) -> bool:
        return self.dim == 0

    def identity(self) -> "Morphism":
        return Morphism(self, self, la.identity(self.dim), check=False)

    def dual(self) -> "Module":
        """``D M = Hom_k(M, k)`` as a right module over the opposite algebra."""
        return Module(self.algebra.opposite(), self.action.transpose(0, 2, 1), check=False)


def _stack(mats: list, n: int) -> np.ndarray:
    if not mats:
        return np.zeros((0, n, n), dtype=la.DTYPE)
    return np.stack(mats).astype(la.DTYPE)


def zero_module(A: Algebra) -> Module:
    return Module(A, np.zeros((A.dim, 0, 0), dtype=la.DTYPE), name="0", check=False)


def span_closure(M: Module, rows: np.ndarray) -> np.ndarray:
    """Rref basis of the submodule generated by ``rows``."""
    p = M.p
    cur = la.row_space(rows, p)
    if cur.shape[0] == 0:
        return cur
    while True:
        prods = np.concatenate([cur] + [cur @ g % p for g in M.gen_mats])
        nxt = la.row_space(prods, p)
        if nxt.shape[0] == cur.shape[0]:
            return nxt
        cur = nxt


class Morphism:
    def __init__(self, source: Module, target: Module, matrix, check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("morphism between modules over different algebras")
        self.source = source
        self.target = target
        self.matrix = la.asmat(matrix, source.p, target.dim).reshape(source.dim, target.dim)
        if check and not self.is_homomorphism():
            raise InvalidModule("matrix does not intertwine the actions")

    def __repr__(self) -> str:
        return f"Morphism({self.source!r} -> {self.target!r}, rank={self.rank})"

    def is_homomorphism(self) -> bool:
        F, p = self.matrix, self.source.p
        for a, b in zip(self.source.gen_mats, self.target.gen_mats):
            if ((a @ F - F @ b) % p).any():
                return False
        return True

    @cached_property
    def rank(self) -> int:
        return la.rank(self.matrix, self.source.p)

    def is_mono(self) -> bool:
        return self.rank == self.source.dim

    def is_epi(self) -> bool:
        return self.rank == self.target.dim

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def then(self, other: "Morphism") -> "Morphism":
        """Composite ``other . self`` (apply ``self`` first)."""
        return Morphism(self.source, other.target, self.matrix @ other.matrix % self.source.p, check=False)

    def image(self) -> "Submodule":
        return Submodule(self.target, la.row_space(self.matrix, self.source.p), check=False)

    def kernel(self) -> "Submodule":
        return Submodule(self.source, la.row_space(la.left_nullspace(self.matrix, self.source.p), self.source.p), check=False)


class Submodule:
    """Action-invariant subspace stored by its reduced echelon basis."""

    def __init__(self, parent: Module, basis, check: bool = True):
        self.parent = parent
        p = parent.p
        rows = la.asmat(basis, p, parent.dim)
        if parent.dim == 0:
            b, piv = la.zeros(0, 0), []
        else:
            b, piv = la.rref(rows.reshape(-1, parent.dim), p)
        self.basis = b
        self.pivots = piv
        if check and b.shape[0]:
            for g in parent.gen_mats:
                if not la.in_span(b, b @ g % p, p):
                    raise NotASubmodule("subspace is not invariant under the action")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def key(self) -> bytes:
        return la.key(self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Submodule) and self.parent is other.parent and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Submodule(dim={self.dim} of {self.parent!r})"

    def contains(self, other: "Submodule") -> bool:
        if other.dim == 0:
            return True
        return la.rank(np.concatenate([self.basis, other.basis]), self.parent.p) == self.dim

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, la.span_sum(self.basis, other.basis, self.parent.p), check=False)

    def __and__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, la.span_intersection(self.basis, other.basis, self.parent.p), check=False)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_whole(self) -> bool:
        return self.dim == self.parent.dim

    @cached_property
    def _realized(self) -> tuple[Module, Morphism]:
        M, p = self.parent, self.parent.p
        B, piv = self.basis, self.pivots
        act = np.array([(B @ a % p)[:, piv] for a in M.action]).reshape(M.algebra.dim, self.dim, self.dim)
        L = Module(M.algebra, act, check=False)
        return L, Morphism(L, M, B, check=False)

    def as_module(self) -> Module:
        return self._realized[0]

    def inclusion(self) -> Morphism:
        return self._realized[1]

    def sort_key(self) -> tuple:
        return (self.dim, tuple(self.basis.ravel().tolist()))


# -- Hom ---------------------------------------------------------------------


def _check_same(M: Module, N: Module) -> None:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules live over different algebras")


def hom_matrices(M: Module, N: Module) -> list[np.ndarray]:
    _check_same(M, N)
    m, n, p = M.dim, N.dim, M.p
    if m == 0 or n == 0:
        return []
    blocks = []
    eye_m, eye_n = la.identity(m), la.identity(n)
    for a, b in zip(M.gen_mats, N.gen_mats):
        blocks.append((np.kron(a, eye_n) - np.kron(eye_m, b.T)) % p)
    sol = la.nullspace(np.concatenate(blocks), p)
    return [row.reshape(m, n) for row in sol]


def hom_basis(M: Module, N: Module) -> list[Morphism]:
    """Basis of ``Hom_A(M, N)``; deterministic order (echelon order of free variables)."""
    return [Morphism(M, N, F, check=False) for F in hom_matrices(M, N)]


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_matrices(M, N))


def exact_parts(f: Morphism) -> dict:
    ker = f.kernel()
    im = f.image()
    Q, proj = quotient(f.target, im)
    return {
        "kernel": (ker.as_module(), ker.inclusion()),
        "image": (im.as_module(), im.inclusion()),
        "cokernel": (Q, proj),
    }


def quotient(M: Module, L: Submodule) -> tuple[Module, Morphism]:
    """``M/L`` on the complement of the pivot columns of ``L``, with the projection."""
    if L.parent is not M:
        if L.parent.algebra is not M.algebra or L.parent.dim != M.dim:
            raise NotASubmodule("submodule belongs to a different module")
        L = Submodule(M, L.basis)
    p = M.p
    comp = la.complement_columns(L.pivots, M.dim)
    proj = la.reduce_mod(L.basis, L.pivots, la.identity(M.dim), p)[:, comp]
    k = len(comp)
    act = np.zeros((M.algebra.dim, k, k), dtype=la.DTYPE)
    if k:
        for i, a in enumerate(M.action):
            act[i] = la.reduce_mod(L.basis, L.pivots, a[comp], p)[:, comp]
    Q = Module(M.algebra, act, check=False)
    return Q, Morphism(M, Q, proj.reshape(M.dim, len(comp)), check=False)


def lift_from_quotient(M: Module, L: Submodule, rows: np.ndarray) -> np.ndarray:
    """Coordinates in ``M`` of vectors given in the basis of ``quotient(M, L)``."""
    comp = la.complement_columns(L.pivots, M.dim)
    out = la.zeros(rows.shape[0], M.dim)
    out[:, comp] = rows
    return out


def direct_sum(*mods: Module) -> Module:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    A = mods[0].algebra
    for M in mods:
        _check_same(mods[0], M)
    n = sum(M.dim for M in mods)
    act = np.zeros((A.dim, n, n), dtype=la.DTYPE)
    off = 0
    for M in mods:
        act[:, off:off + M.dim, off:off + M.dim] = M.action
        off += M.dim
    return Module(A, act, check=False)


def direct_sum_maps(*mods: Module) -> tuple[Module, list[Morphism], list[Morphism]]:
    S = direct_sum(*mods)
    incs, projs = [], []
    off = 0
    for M in mods:
        E = la.zeros(M.dim, S.dim)
        E[:, off:off + M.dim] = la.identity(M.dim)
        incs.append(Morphism(M, S, E, check=False))
        projs.append(Morphism(S, M, E.T.copy(), check=False))
        off += M.dim
    return S, incs, projs


# -- submodule lattice ---------------------------------------------------------


def _normalized_vectors(n: int, p: int):
    """All nonzero vectors of F_p^n whose first nonzero entry is 1, in a fixed order."""
    for lead in range(n):
        tail = n - lead - 1
        for rest in itertools.product(range(p), repeat=tail):
            v = [0] * lead + [1] + list(rest)
            yield v


def cyclic_submodules(M: Module) -> list[Submodule]:
    p, n = M.p, M.dim
    seen: dict[bytes, Submodule] = {}
    if n == 0:
        return []
    vecs = np.array(list(_normalized_vectors(n, p)), dtype=la.DTYPE)
    for start in range(0, len(vecs), 4096):
        chunk = vecs[start:start + 4096]
        # rows: v . b_i for every basis element; the unit is among them up to span
        images = np.einsum("kn,inm->kim", chunk, M.action) % p
        for v, img in zip(chunk, images):
            B = la.row_space(np.concatenate([v.reshape(1, n), img]), p)
            k = la.key(B)
            if k not in seen:
                seen[k] = Submodule(M, B, check=False)
    return sorted(seen.values(), key=Submodule.sort_key)


def all_submodules(M: Module, cap: int = DEFAULT_SUBMODULE_CAP) -> list[Submodule]:
    """Every submodule of ``M`` (including 0 and M), sorted by (dim, echelon entries).

    Computed as the closure of the cyclic submodules under sums.
    """
    cyc = cyclic_submodules(M)
    found: dict[bytes, Submodule] = {}
    zero = M.zero_sub()
    found[zero.key] = zero
    frontier = []
    for c in cyc:
        if c.key not in found:
            found[c.key] = c
            frontier.append(c)
    if len(found) > cap:
        raise CapExceeded("submodules", len(found), cap)
    while frontier:
        nxt = []
        for U in frontier:
            for c in cyc:
                if U.contains(c):
                    continue
                S = U + c
                if S.key not in found:
                    found[S.key] = S
                    nxt.append(S)
                    if len(found) > cap:
                        raise CapExceeded("submodules", len(found), cap)
        frontier = nxt
    whole = M.whole()
    found.setdefault(whole.key, whole)
    return sorted(found.values(), key=Submodule.sort_key)


def proper_nonzero_submodules(M: Module, cap: int = DEFAULT_SUBMODULE_CAP) -> list[Submodule]:
    return [L for L in all_submodules(M, cap) if 0 < L.dim < M.dim]


# -- structure -------------------------------------------------------------------


def composition_series(M: Module) -> list[Submodule]:
    """``0 = M_0 < M_1 < ... < M_n = M`` with simple factors.

    Each step adds the first simple constituent (lowest vertex, first echelon
    row) of the socle of the current quotient.
    """
    p = M.p
    chain = [M.zero_sub()]
    cur = M.zero_sub()
    while cur.dim < M.dim:
        Q, _ = quotient(M, cur)
        soc = Q.socle.basis
        v = None
        for i in range(M.algebra.n_vertices):
            part = Q.vertex_part(soc, i)
            if part.shape[0]:
                v = part[:1]
                break
        lifted = lift_from_quotient(M, cur, v)
        cur = Submodule(M, la.span_sum(cur.basis, lifted, p), check=False)
        chain.append(cur)
    return chain


def structure(M: Module) -> dict:
    from .filtration import Filtration

    top, _ = quotient(M, M.radical)
    series = composition_series(M)
    return {
        "radical": M.radical,
        "socle": M.socle,
        "top": top,
        "length": M.length,
        "comp_series": Filtration.from_chain(M, series, certificate="simple"),
        "dim_vector": list(M.dim_vector),
    }


# -- endomorphisms, decomposition, isomorphism ---------------------------------------


def _nilpotent(F: np.ndarray, p: int) -> bool:
    return not la.matpow(F, F.shape[0], p).any()


def _eigen_shift(F: np.ndarray, p: int):
    """The unique ``lam`` with ``F - lam`` nilpotent, or None."""
    n = F.shape[0]
    eye = la.identity(n)
    for lam in range(p):
        if _nilpotent((F - lam * eye) % p, p):
            return lam
    return None


def _fitting_split(F: np.ndarray, p: int):
    """Return (image, kernel) bases of ``F^n`` when that is a proper splitting, else None."""
    n = F.shape[0]
    G = la.matpow(F, n, p)
    r = la.rank(G, p)
    if 0 < r < n:
        return la.row_space(G, p), la.row_space(la.left_nullspace(G, p), p)
    return None


def _is_local(End: list[np.ndarray], p: int) -> bool | None:
    """True if End is split local, None if undecided by this shortcut."""
    n = End[0].shape[0]
    eye = la.identity(n)
    J = []
    for F in End:
        lam = _eigen_shift(F, p)
        if lam is None:
            return None
        G = (F - lam * eye) % p
        if G.any():
            J.append(G.ravel())
    if not J:
        return True
    Jb = la.row_space(np.array(J), p)
    if la.in_span(Jb, eye.ravel(), p):
        return None
    # J is a nilpotent two-sided ideal of codimension one iff closed under products and J^k = 0
    power = Jb
    for _ in range(n + 1):
        prods = [(x.reshape(n, n) @ y.reshape(n, n) % p).ravel() for x in power for y in Jb]
        prods = la.row_space(np.array(prods), p) if prods else la.zeros(0, n * n)
        if prods.shape[0] and not all(la.in_span(Jb, r, p) for r in prods):
            return None
        if prods.shape[0] == 0:
            return Jb.shape[0] + 1 == len(End)
        if prods.shape[0] == power.shape[0] and la.key(prods) == la.key(power):
            return None
        power = prods
    return None


def _split_once(M: Module, sweep_cap: int):
    """Return (U, V) submodule bases with M = U + V, or None when M is indecomposable."""
    p = M.p
    End = hom_matrices(M, M)
    n = M.dim
    eye = la.identity(n)
    for F in End:
        for lam in range(p):
            s = _fitting_split((F - lam * eye) % p, p)
            if s is not None:
                return s
    local = _is_local(End, p)
    if local:
        return None
    # exhaustive idempotent sweep over End(M)
    total = p ** len(End)
    if total > sweep_cap:
        raise SearchCapExceeded("endomorphism sweep", total, sweep_cap)
    stack = np.array(End)
    for coeffs in itertools.product(range(p), repeat=len(End)):
        F = np.tensordot(np.array(coeffs, dtype=la.DTYPE), stack, axes=1) % p
        if not F.any() or (F == eye).all():
            continue
        if ((F @ F - F) % p).any():
            continue
        return la.row_space(F, p), la.row_space((eye - F) % p, p)
    return None


def decompose_with_maps(M: Module, sweep_cap: int = DEFAULT_SWEEP_CAP) -> list[tuple[Module, np.ndarray]]:
    """Indecomposable summands with their embedding matrices (summand rows in ``M`` coordinates)."""
    if M.dim == 0:
        return []
    out = []
    stack = [(M, la.identity(M.dim))]
    while stack:
        X, emb = stack.pop()
        s = _split_once(X, sweep_cap)
        if s is None:
            out.append((X, emb))
            continue
        parts = []
        for basis in s:
            sub = Submodule(X, basis, check=False)
            Y, inc = sub._realized
            parts.append((Y, inc.matrix @ emb % M.p))
        stack.extend(reversed(parts))
    return out


def decompose(M: Module, sweep_cap: int = DEFAULT_SWEEP_CAP) -> list[Module]:
    return [X for X, _ in decompose_with_maps(M, sweep_cap)]


def is_indecomposable(M: Module, sweep_cap: int = DEFAULT_SWEEP_CAP) -> bool:
    return M.dim > 0 and _split_once(M, sweep_cap) is None


def _iso_indecomposable(X: Module, Y: Module) -> bool:
    """Exact test for indecomposable X, Y: iso iff some g_i f_j is not nilpotent."""
    if X.invariants != Y.invariants:
        return False
    p = X.p
    fs = hom_matrices(X, Y)
    gs = hom_matrices(Y, X)
    for F in fs:
        for G in gs:
            if not _nilpotent(F @ G % p, p):
                return True
    return False


def find_isomorphism(M: Module, N: Module) -> np.ndarray | None:
    """Invertible intertwiner ``M -> N`` found among hom basis elements and small combinations."""
    _check_same(M, N)
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return la.zeros(0, 0)
    p = M.p
    hs = hom_matrices(M, N)
    for F in hs:
        if la.rank(F, p) == M.dim:
            return F
    for F, G in itertools.combinations(hs, 2):
        for c in range(1, p):
            H = (F + c * G) % p
            if la.rank(H, p) == M.dim:
                return H
    return None


def is_isomorphic(M: Module, N: Module, sweep_cap: int = DEFAULT_SWEEP_CAP) -> bool:
    _check_same(M, N)
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    if M.invariants != N.invariants:
        return False
    if find_isomorphism(M, N) is not None:
        return True
    xs = decompose(M, sweep_cap)
    ys = decompose(N, sweep_cap)
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for X in xs:
        for k, Y in enumerate(remaining):
            if _iso_indecomposable(X, Y):
                del remaining[k]
                break
        else:
            return False
    return True


# -- canonical modules -------------------------------------------------------------


def regular_module(A: Algebra) -> Module:
    return Module(A, A.right_regular, name="A", check=False)


def _projectives_and_simples(A: Algebra) -> tuple[list[Module], list[Module]]:
    cache = getattr(A, "_proj_simple", None)
    if cache is None:
        R = regular_module(A)
        projs, simples = [], []
        for i, e in enumerate(A.idempotents):
            rows = np.array([A.mul(e, b) for b in la.identity(A.dim)])
            P = Submodule(R, rows, check=False).as_module()
            P.name = f"P{A.vertex_labels[i]}"
            S, _ = quotient(P, P.radical)
            S.name = f"S{A.vertex_labels[i]}"
            projs.append(P)
            simples.append(S)
        cache = A._proj_simple = (projs, simples)
    return cache


def canonical_modules(A: Algebra) -> tuple[list[Module], list[Module], list[Module]]:
    """Indecomposable projectives ``e_i A``, injectives ``D(A e_i)`` and simples, per vertex."""
    projs, simples = _projectives_and_simples(A)
    injs = getattr(A, "_injectives", None)
    if injs is None:
        op_projs = _projectives_and_simples(A.opposite())[0]
        injs = [
            Module(A, Q.action.transpose(0, 2, 1), name=f"I{A.vertex_labels[i]}", check=False)
            for i, Q in enumerate(op_projs)
        ]
        A._injectives = injs
    return projs, injs, simples


def simple_module(A: Algebra, i: int) -> Module:
    return canonical_modules(A)[2][i]


def simple_index(S: Module) -> int:
    """Vertex index of a one-dimensional module."""
    return int(np.flatnonzero(np.array(S.dim_vector))[0])
