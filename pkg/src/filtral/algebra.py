"""Finite-dimensional algebras over F_p given by structure constants.

An :class:`Algebra` stores ``struct[i, j] = coordinates of b_i * b_j``. Bound
quiver algebras are produced by :func:`build_quiver_algebra`, which computes a
basis of path classes modulo a homogeneous admissible ideal degree by degree.

Paths are concatenated left to right: ``alpha*beta`` means "alpha, then beta".
Modules over these algebras are right modules (see ``module.py``), so the
indecomposable projectives are ``P_i = e_i A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import DegenerateRelation, NonAdmissibleIdeal, NonSplitAlgebra
from .field import PrimeField


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass
class QuiverPresentation:
    """Quiver with relations. A relation is a list of ``(coef, path)`` terms summing to zero."""

    vertices: list[str]
    arrows: list[Arrow]
    relations: list[list[tuple[int, tuple[str, ...]]]] = field(default_factory=list)
    nilpotency_bound: int = 10

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownArrow(f"unknown arrow {name!r}")

    def path_ends(self, path: tuple[str, ...]) -> tuple[str, str]:
        arrows = [self.arrow(n) for n in path]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise DegenerateRelation(f"path {'*'.join(path)} is not composable at {a.name}*{b.name}")
        return arrows[0].source, arrows[-1].target


class UnknownArrow(DegenerateRelation):
    code = "unknown_arrow"


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"valid": self.ok, "violations": list(self.violations)}


class Algebra:
    """Associative unital algebra with a complete set of primitive orthogonal idempotents.

    The algebra is assumed basic and split (every ``e_i A e_i`` is local with
    residue field F_p), so every simple module is one-dimensional and the
    length of a module equals its dimension.
    """

    def __init__(
        self,
        field: PrimeField,
        struct,
        unit,
        idempotents,
        labels: list[str] | None = None,
        vertex_labels: list[str] | None = None,
        presentation: QuiverPresentation | None = None,
        radical=None,
        generators=None,
        name: str = "",
    ):
        p = field.p
        self.field = field
        self.p = p
        self.struct = np.asarray(struct, dtype=la.DTYPE) % p
        self.dim = self.struct.shape[0]
        self.unit = np.asarray(unit, dtype=la.DTYPE).reshape(self.dim) % p
        self.idempotents = la.asmat(idempotents, p, self.dim)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        n = self.idempotents.shape[0]
        self.vertex_labels = list(vertex_labels) if vertex_labels is not None else [str(i + 1) for i in range(n)]
        self.presentation = presentation
        self.name = name
        if radical is not None:
            self.__dict__["radical"] = la.row_space(la.asmat(radical, p, self.dim), p)
        if generators is not None:
            self.__dict__["generators"] = la.asmat(generators, p, self.dim)
        self._opposite: Algebra | None = None
        # arrow words of the basis paths (quiver algebras only; () for vertices)
        self.words: list[tuple[str, ...]] | None = None

    def __repr__(self) -> str:
        return f"Algebra({self.name or 'unnamed'}, dim={self.dim}, {self.field})"

    @property
    def n_vertices(self) -> int:
        return self.idempotents.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=la.DTYPE)
        v[i] = 1
        return v

    def element(self, label: str) -> np.ndarray:
        return self.basis_vector(self.labels.index(label))

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=la.DTYPE)
        y = np.asarray(y, dtype=la.DTYPE)
        return np.einsum("i,j,ijk->k", x, y, self.struct) % self.p

    @cached_property
    def right_regular(self) -> np.ndarray:
        """``right_regular[i]`` is the matrix of ``x -> x * b_i`` on row vectors."""
        return np.ascontiguousarray(self.struct.transpose(1, 0, 2))

    def right_mult(self, y) -> np.ndarray:
        return np.tensordot(np.asarray(y, dtype=la.DTYPE), self.right_regular, axes=1) % self.p

    def left_mult(self, y) -> np.ndarray:
        """Matrix of ``x -> y * x`` on row vectors."""
        return np.tensordot(np.asarray(y, dtype=la.DTYPE), self.struct, axes=1) % self.p

    def is_nilpotent(self, y) -> bool:
        return not la.matpow(self.right_mult(y), self.dim, self.p).any()

    @cached_property
    def radical(self) -> np.ndarray:
        """Basis of the Jacobson radical via the Peirce decomposition.

        ``rad A = sum_{i != j} e_i A e_j + sum_i rad(e_i A e_i)`` where the
        radical of a split local corner is ``{y - lambda(y) e_i}``.
        """
        p, d = self.p, self.dim
        pieces = []
        eye = la.identity(d)
        for i, ei in enumerate(self.idempotents):
            left = np.array([self.mul(ei, b) for b in eye])
            for j, ej in enumerate(self.idempotents):
                corner = la.row_space(np.array([self.mul(x, ej) for x in left]).reshape(-1, d), p)
                if i != j:
                    pieces.append(corner)
                    continue
                for y in corner:
                    for lam in range(p):
                        z = (y - lam * ei) % p
                        if self.is_nilpotent(z):
                            pieces.append(z.reshape(1, d))
                            break
                    else:
                        raise NonSplitAlgebra(
                            f"corner e_{self.vertex_labels[i]} A e_{self.vertex_labels[i]} is not split local over {self.field}"
                        )
        if not pieces:
            return la.zeros(0, d)
        return la.row_space(np.concatenate(pieces), p)

    @cached_property
    def generators(self) -> np.ndarray:
        """Idempotents plus lifts of a basis of rad/rad^2; these generate A as an algebra."""
        p, d = self.p, self.dim
        rad = self.radical
        prods = [self.mul(a, b) for a in rad for b in rad]
        span = la.row_space(np.array(prods).reshape(-1, d), p) if prods else la.zeros(0, d)
        chosen = []
        for r in rad:
            if not la.in_span(span, r, p):
                chosen.append(r)
                span = la.span_sum(span, r.reshape(1, d), p)
        rows = [*self.idempotents, *chosen]
        return la.asmat(rows, p, d)

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(
                self.field,
                self.struct.transpose(1, 0, 2),
                self.unit,
                self.idempotents,
                labels=[f"{l}^op" for l in self.labels],
                vertex_labels=self.vertex_labels,
                radical=self.radical,
                generators=self.generators,
                name=f"{self.name}^op" if self.name else "op",
            )
            op._opposite = self
            self._opposite = op
        return self._opposite


def validate_algebra(A: Algebra) -> ValidationReport:
    """Check associativity (every basis triple), the unit and the idempotent axioms."""
    report = ValidationReport()
    p, c, d = A.p, A.struct, A.dim
    lhs = np.einsum("ijl,lkm->ijkm", c, c) % p
    rhs = np.einsum("jkl,ilm->ijkm", c, c) % p
    bad = np.argwhere((lhs != rhs).any(axis=3))
    for i, j, k in bad[:20]:
        report.violations.append(
            f"associativity fails on ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})"
        )
    eye = la.identity(d)
    left_unit = np.einsum("l,lik->ik", A.unit, c) % p
    right_unit = np.einsum("l,ilk->ik", A.unit, c) % p
    if (left_unit != eye).any() or (right_unit != eye).any():
        report.violations.append("unit axiom fails")
    E = A.idempotents
    for r, er in enumerate(E):
        for s, es in enumerate(E):
            want = er if r == s else np.zeros(d, dtype=la.DTYPE)
            if (A.mul(er, es) != want).any():
                report.violations.append(f"idempotent axiom fails for (e{r}, e{s})")
    if E.shape[0] and ((E.sum(axis=0) % p) != A.unit).any():
        report.violations.append("idempotents do not sum to the unit")
    return report


# -- bound quiver algebras ---------------------------------------------------


def _validate_relations(pres: QuiverPresentation, p: int) -> list[tuple[int, dict]]:
    """Return ``(degree, {path: coef})`` per relation."""
    out = []
    for idx, rel in enumerate(pres.relations):
        terms: dict[tuple[str, ...], int] = {}
        ends = set()
        lengths = set()
        for coef, path in rel:
            path = tuple(path)
            if len(path) < 2:
                raise DegenerateRelation(f"relation {idx}: term {'*'.join(path) or '<empty>'} has length < 2")
            ends.add(pres.path_ends(path))
            lengths.add(len(path))
            terms[path] = (terms.get(path, 0) + coef) % p
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            raise DegenerateRelation(f"relation {idx} is zero")
        if len(ends) > 1:
            raise DegenerateRelation(f"relation {idx} mixes paths that are not parallel")
        if len(lengths) > 1:
            raise DegenerateRelation(f"relation {idx} is not homogeneous; only homogeneous relations are supported")
        out.append((lengths.pop(), terms))
    return out


def build_quiver_algebra(pres: QuiverPresentation, field: PrimeField, name: str = "") -> Algebra:
    """Path algebra of ``pres`` modulo its relations.

    The ideal is built degree by degree, ``I_k = I_{k-1} R + R I_{k-1} + rel_k``.
    Normal paths at each degree are the non-leading columns of ``I_k`` with the
    (length, arrow names) order, so the basis is: vertices, then normal paths
    sorted by (length, names).
    """
    p = field.p
    for a in pres.arrows:
        if a.source not in pres.vertices or a.target not in pres.vertices:
            raise DegenerateRelation(f"arrow {a.name} has an unknown endpoint")
    names = [a.name for a in pres.arrows]
    if len(set(names)) != len(names):
        raise DegenerateRelation("duplicate arrow names")
    rels = _validate_relations(pres, p)
    arrows = {a.name: a for a in pres.arrows}

    def src(path):
        return arrows[path[0]].source

    def tgt(path):
        return arrows[path[-1]].target

    layers: list[dict] = []  # per degree k>=1: paths, index, rref, pivots, normal
    paths = sorted((a.name,) for a in pres.arrows)
    prev_rows = None
    top_degree = None
    for k in range(1, pres.nilpotency_bound + 1):
        if k > 1:
            paths = sorted({q + (a.name,) for q in layers[-1]["paths"] for a in pres.arrows if tgt(q) == a.source})
        if not paths:
            top_degree = k
            break
        # columns ordered largest first so pivots are leading terms
        order = sorted(range(len(paths)), key=lambda i: paths[i], reverse=True)
        col_of = {paths[i]: c for c, i in enumerate(order)}
        rows = []
        if prev_rows is not None and prev_rows.shape[0]:
            prev_paths = layers[-1]["colpaths"]
            for row in prev_rows:
                nz = np.flatnonzero(row)
                for a in pres.arrows:
                    right = np.zeros(len(paths), dtype=la.DTYPE)
                    left = np.zeros(len(paths), dtype=la.DTYPE)
                    hit_r = hit_l = False
                    for c in nz:
                        q = prev_paths[c]
                        if tgt(q) == a.source:
                            right[col_of[q + (a.name,)]] += row[c]
                            hit_r = True
                        if a.target == src(q):
                            left[col_of[(a.name,) + q]] += row[c]
                            hit_l = True
                    if hit_r:
                        rows.append(right % p)
                    if hit_l:
                        rows.append(left % p)
        for deg, terms in rels:
            if deg == k:
                v = np.zeros(len(paths), dtype=la.DTYPE)
                for path, coef in terms.items():
                    v[col_of[path]] = coef % p
                rows.append(v)
        ideal, piv = la.rref(np.array(rows, dtype=la.DTYPE).reshape(-1, len(paths)), p)
        colpaths = [paths[i] for i in order]
        normal = sorted(colpaths[c] for c in la.complement_columns(piv, len(paths)))
        layers.append({"paths": paths, "colpaths": colpaths, "col_of": col_of, "rref": ideal, "piv": piv, "normal": normal})
        prev_rows = ideal
        if not normal:
            top_degree = k
            break
    if top_degree is None:
        raise NonAdmissibleIdeal(
            f"nonzero path classes remain at length {pres.nilpotency_bound}; the ideal is not admissible within the bound"
        )

    verts = list(pres.vertices)
    basis: list[tuple] = [("vertex", v) for v in verts]
    for layer in layers:
        basis.extend(("path", q) for q in layer["normal"])
    index = {b: i for i, b in enumerate(basis)}
    d = len(basis)

    def reduce_path(q: tuple[str, ...]) -> np.ndarray:
        out = np.zeros(d, dtype=la.DTYPE)
        k = len(q)
        if k >= top_degree:
            return out
        layer = layers[k - 1]
        v = np.zeros(len(layer["paths"]), dtype=la.DTYPE)
        v[layer["col_of"][q]] = 1
        r = la.reduce_mod(layer["rref"], layer["piv"], v, p)[0]
        for c in np.flatnonzero(r):
            out[index[("path", layer["colpaths"][c])]] = r[c]
        return out

    struct = np.zeros((d, d, d), dtype=la.DTYPE)
    for i, (ki, xi) in enumerate(basis):
        for j, (kj, xj) in enumerate(basis):
            if ki == "vertex" and kj == "vertex":
                if xi == xj:
                    struct[i, j, i] = 1
            elif ki == "vertex":
                if src(xj) == xi:
                    struct[i, j, j] = 1
            elif kj == "vertex":
                if tgt(xi) == xj:
                    struct[i, j, i] = 1
            elif tgt(xi) == src(xj):
                struct[i, j] = reduce_path(xi + xj)
    n = len(verts)
    unit = np.zeros(d, dtype=la.DTYPE)
    unit[:n] = 1
    idem = la.identity(d)[:n]
    labels = [f"e{x}" if k == "vertex" else "*".join(x) for k, x in basis]
    words = [() if k == "vertex" else x for k, x in basis]
    arrow_rows = [index[("path", (a.name,))] for a in pres.arrows if ("path", (a.name,)) in index]
    gens = np.concatenate([idem, la.identity(d)[arrow_rows]]) if arrow_rows else idem
    A = Algebra(
        field,
        struct,
        unit,
        idem,
        labels=labels,
        vertex_labels=verts,
        presentation=pres,
        radical=la.identity(d)[n:],
        generators=gens,
        name=name,
    )
    A.words = words
    return A


def structure_constant_algebra(field: PrimeField, table, unit, idempotents, labels=None, vertex_labels=None, name="") -> Algebra:
    return Algebra(field, table, unit, idempotents, labels=labels, vertex_labels=vertex_labels, name=name)
