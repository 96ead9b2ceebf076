"""JSON files for algebras, modules, subcategories and filtrations; DOT output for chains.

Schema errors carry a ``line:column`` location (1-based) taken from a source
map of the input text.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np
from json_source_map import calculate

from . import linalg as la
from .algebra import (
    Algebra,
    Arrow,
    QuiverPresentation,
    ValidationReport,
    build_quiver_algebra,
    structure_constant_algebra,
    validate_algebra,
)
from .config import Budget, default_budget
from .enumerate import module_from_arrows
from .errors import DegenerateRelation, FiltralError, ParseError, ValidationFailure
from .field import PrimeField, is_prime
from .filtration import COFILTRATION, FILTRATION, Filtration
from .module import Module, Morphism, Submodule, quotient
from .subcat import (
    All,
    FiltClosure,
    IdFinite,
    IdLe,
    PdFinite,
    PdLe,
    PerpLeft,
    PerpRight,
    SubcatSpec,
    Torsion,
    TorsionFree,
)


class _Doc:
    """Parsed JSON plus a pointer -> location map."""

    def __init__(self, text: str, source: str):
        self.source = source
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
        try:
            self._map = calculate(text)
        except Exception:  # the source map is best effort; json.loads already accepted the text
            self._map = {}

    def where(self, *path) -> str:
        ptr = "".join(f"/{p}" for p in path)
        while ptr not in self._map and ptr:
            ptr = ptr.rsplit("/", 1)[0]
        entry = self._map.get(ptr)
        if entry is None:
            return self.source
        loc = entry.value_start
        return f"{self.source}:{loc.line + 1}:{loc.column + 1}"

    def fail(self, msg: str, *path):
        raise ParseError(msg, self.where(*path))

    def need(self, obj, key, kind, *path):
        if not isinstance(obj, dict) or key not in obj:
            self.fail(f"missing field {key!r}", *path)
        val = obj[key]
        if kind is not None and not isinstance(val, kind):
            self.fail(f"field {key!r} has the wrong type", *path, key)
        return val


def _read(path) -> _Doc:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    return _Doc(text, str(path))


# -- algebras -----------------------------------------------------------------------------

_ALGEBRA_CACHE: dict[tuple[str, float], Algebra] = {}


def parse_algebra(path, validate: bool = True) -> Algebra:
    key = (os.path.abspath(path), os.path.getmtime(path) if os.path.exists(path) else 0.0)
    if key in _ALGEBRA_CACHE:
        return _ALGEBRA_CACHE[key]
    doc = _read(path)
    A = algebra_from_doc(doc, Path(path).stem)
    if validate:
        rep = validate_algebra(A)
        if not rep.ok:
            raise ValidationFailure(rep)
    _ALGEBRA_CACHE[key] = A
    return A


def algebra_from_json(text: str, name: str = "") -> Algebra:
    return algebra_from_doc(_Doc(text, name or "<string>"), name)


def algebra_from_doc(doc: _Doc, name: str = "") -> Algebra:
    d = doc.data
    if not isinstance(d, dict):
        doc.fail("algebra file must hold a JSON object")
    fld = doc.need(d, "field", dict)
    p = doc.need(fld, "p", int, "field")
    if not is_prime(p):
        doc.fail(f"p = {p} is not prime", "field", "p")
    F = PrimeField(p)
    name = d.get("name", name)
    if "quiver" in d:
        q = doc.need(d, "quiver", dict)
        verts = doc.need(q, "vertices", list, "quiver")
        verts = [str(v) for v in verts]
        arrows = []
        for k, a in enumerate(doc.need(q, "arrows", list, "quiver")):
            where = ("quiver", "arrows", k)
            nm = doc.need(a, "name", str, *where)
            src = str(doc.need(a, "from", None, *where))
            tgt = str(doc.need(a, "to", None, *where))
            for end, key in ((src, "from"), (tgt, "to")):
                if end not in verts:
                    doc.fail(f"arrow {nm!r} uses unknown vertex {end!r}", *where, key)
            arrows.append(Arrow(nm, src, tgt))
        names = {a.name for a in arrows}
        rels = []
        for r, rel in enumerate(d.get("relations", [])):
            if not isinstance(rel, list):
                doc.fail("a relation is a list of terms", "relations", r)
            terms = []
            for t, term in enumerate(rel):
                where = ("relations", r, t)
                coef = doc.need(term, "coef", int, *where)
                pth = doc.need(term, "path", list, *where)
                for s, a in enumerate(pth):
                    if a not in names:
                        doc.fail(f"relation uses unknown arrow {a!r}", *where, "path", s)
                terms.append((coef, tuple(pth)))
            rels.append(terms)
        pres = QuiverPresentation(verts, arrows, rels, int(d.get("nilpotency_bound", 10)))
        try:
            return build_quiver_algebra(pres, F, name=name)
        except DegenerateRelation as exc:
            doc.fail(str(exc), "relations")
    dim = doc.need(d, "dim", int)
    table = doc.need(d, "table", list)
    arr = np.array(table, dtype=object)
    if arr.shape != (dim, dim, dim):
        doc.fail(f"table must have shape ({dim}, {dim}, {dim})", "table")
    unit = doc.need(d, "unit", list)
    idem = doc.need(d, "idempotents", list)
    return structure_constant_algebra(
        F, np.array(table, dtype=la.DTYPE), unit, idem, labels=d.get("labels"), vertex_labels=d.get("vertex_labels"), name=name
    )


def algebra_to_dict(A: Algebra) -> dict:
    out: dict = {"field": {"p": A.p}}
    if A.name:
        out["name"] = A.name
    pres = A.presentation
    if pres is not None:
        out["quiver"] = {
            "vertices": list(pres.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in pres.arrows],
        }
        out["relations"] = [[{"coef": int(c) % A.p, "path": list(w)} for c, w in rel] for rel in pres.relations]
        out["nilpotency_bound"] = pres.nilpotency_bound
        return out
    out["dim"] = A.dim
    out["table"] = A.struct.tolist()
    out["unit"] = A.unit.tolist()
    out["idempotents"] = A.idempotents.tolist()
    out["labels"] = list(A.labels)
    out["vertex_labels"] = list(A.vertex_labels)
    return out


# -- modules --------------------------------------------------------------------------------


def parse_module(path, algebra: Algebra | None = None) -> Module:
    doc = _read(path)
    d = doc.data
    if not isinstance(d, dict):
        doc.fail("module file must hold a JSON object")
    if algebra is None:
        ref = doc.need(d, "algebra", str)
        apath = Path(ref)
        if not apath.is_absolute():
            apath = Path(path).parent / apath
        algebra = parse_algebra(apath)
    M = module_from_doc(doc, algebra)
    bad = M.violations()
    if bad:
        raise ValidationFailure(ValidationReport(bad))
    return M


def module_from_doc(doc: _Doc, A: Algebra) -> Module:
    d = doc.data
    name = d.get("name", Path(doc.source).stem)
    if "arrows" in d or "dims" in d:
        if A.presentation is None:
            doc.fail("arrow matrices need a quiver algebra")
        dims = doc.need(d, "dims", dict)
        for v in dims:
            if v not in A.presentation.vertices:
                doc.fail(f"unknown vertex {v!r}", "dims", v)
        mats = doc.need(d, "arrows", dict)
        names = {a.name: a for a in A.presentation.arrows}
        arrays = {}
        for nm, m in mats.items():
            if nm not in names:
                doc.fail(f"unknown arrow {nm!r}", "arrows", nm)
            a = names[nm]
            shape = (int(dims.get(a.target, 0)), int(dims.get(a.source, 0)))
            arr = np.array(m, dtype=la.DTYPE) if m else np.zeros((0, 0), dtype=la.DTYPE)
            if arr.size != shape[0] * shape[1] or (arr.size and arr.shape != shape):
                doc.fail(f"arrow {nm!r} needs a {shape[0]}x{shape[1]} matrix", "arrows", nm)
            arrays[nm] = arr.reshape(shape)
        return module_from_arrows(A, dims, arrays, name=name, check=False)
    n = doc.need(d, "dim", int)
    act = np.array(doc.need(d, "action", list), dtype=la.DTYPE)
    if act.shape != (A.dim, n, n):
        doc.fail(f"action must have shape ({A.dim}, {n}, {n})", "action")
    return Module(A, act, name=name, check=False)


def arrow_form(M: Module) -> tuple[dict, dict, np.ndarray]:
    """Dimension vector, arrow matrices and the basis change to vertex-adapted coordinates."""
    A = M.algebra
    pres = A.presentation
    p = M.p
    parts = [la.row_space(M.vertex_part(la.identity(M.dim), i), p) for i in range(A.n_vertices)]
    S = np.concatenate(parts).reshape(M.dim, M.dim)
    Sinv = la.inverse(S, p)
    off = np.concatenate([[0], np.cumsum([b.shape[0] for b in parts])]).astype(int)
    dims = {v: int(parts[k].shape[0]) for k, v in enumerate(pres.vertices)}
    idx = {v: k for k, v in enumerate(pres.vertices)}
    arrows = {}
    for a in pres.arrows:
        R = S @ M.rep(A.element(a.name)) @ Sinv % p
        s, t = idx[a.source], idx[a.target]
        arrows[a.name] = R[off[s]:off[s + 1], off[t]:off[t + 1]].T.copy()
    return dims, arrows, S


def module_to_dict(M: Module, algebra_ref: str | None = None) -> dict:
    out: dict = {}
    if algebra_ref:
        out["algebra"] = algebra_ref
    if M.name:
        out["name"] = M.name
    if M.algebra.presentation is not None:
        dims, arrows, _ = arrow_form(M)
        out["dims"] = {v: n for v, n in dims.items() if n}
        out["arrows"] = {k: v.tolist() for k, v in arrows.items() if v.size}
        return out
    out["dim"] = M.dim
    out["action"] = M.action.tolist()
    return out


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=2)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


# -- subcategory specs ---------------------------------------------------------------------

_CLOSURE_WORDS = {"verify": "unknown", "declared": "declared", "declared-trusted": "declared-trusted", "trusted": "declared-trusted"}


def named_spec(name: str, budget: Budget | None = None) -> SubcatSpec:
    """``all``, ``pd-finite``, ``id-finite``, ``pd-le-N`` or ``id-le-N``."""
    b = budget or default_budget()
    if name == "all":
        return SubcatSpec("all", All(), budget=b)
    if name == "pd-finite":
        return SubcatSpec("pd-finite", PdFinite(), budget=b)
    if name == "id-finite":
        return SubcatSpec("id-finite", IdFinite(), budget=b)
    for prefix, cls in (("pd-le-", PdLe), ("id-le-", IdLe)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return SubcatSpec(name, cls(int(name[len(prefix):])), budget=b)
    raise ParseError(f"unknown subcategory name {name!r}", "--cat")


def parse_spec(arg: str, algebra: Algebra | None = None, budget: Budget | None = None) -> SubcatSpec:
    """A subcategory from a name or a JSON config file."""
    if not (arg.endswith(".json") or os.path.sep in arg):
        return named_spec(arg, budget)
    doc = _read(arg)
    d = doc.data
    b = budget or default_budget()
    if "budget" in d:
        if not isinstance(d["budget"], dict):
            doc.fail("budget must be an object", "budget")
        b = b.updated(**d["budget"])
    pred = doc.need(d, "predicate", dict)
    kind = doc.need(pred, "kind", str, "predicate")
    base = Path(arg).parent

    def mods(key):
        paths = doc.need(pred, key, list, "predicate")
        return [parse_module(base / q, algebra) for q in paths]

    if kind == "all":
        P = All()
    elif kind == "pd_le":
        P = PdLe(doc.need(pred, "n", int, "predicate"))
    elif kind == "pd_finite":
        P = PdFinite(pred.get("cutoff"))
    elif kind == "id_le":
        P = IdLe(doc.need(pred, "n", int, "predicate"))
    elif kind == "id_finite":
        P = IdFinite()
    elif kind in ("perp_left", "perp_right"):
        cls = PerpLeft if kind == "perp_left" else PerpRight
        P = cls(mods("modules"), doc.need(pred, "n", int, "predicate"))
    elif kind in ("torsion", "torsion_free"):
        T = parse_module(base / doc.need(pred, "module", str, "predicate"), algebra)
        P = Torsion(T) if kind == "torsion" else TorsionFree(T)
    elif kind == "filt_closure":
        P = FiltClosure(mods("modules"))
    else:
        doc.fail(f"unknown predicate kind {kind!r}", "predicate", "kind")
    closures = {}
    for k, v in d.get("closures", {}).items():
        if v not in _CLOSURE_WORDS:
            doc.fail(f"unknown closure status {v!r}", "closures", k)
        closures[k] = _CLOSURE_WORDS[v]
    return SubcatSpec(d.get("name", Path(arg).stem), P, closures=closures, budget=b)


# -- filtrations -----------------------------------------------------------------------------


def module_summary(M: Module) -> dict:
    return {"dim_vector": list(M.dim_vector), "iso_label": M.loewy_label()}


def kernel_chain(F: Filtration) -> list[Submodule]:
    """Filtration chain, or the kernels of the composites ``M -> N_i`` for a cofiltration."""
    if F.kind == FILTRATION:
        return F.chain
    composite = F.module.identity()
    chain = [F.module.zero_sub()]
    for f in F.epis:
        composite = composite.then(f)
        chain.append(composite.kernel())
    return chain


def filtration_to_dict(F: Filtration) -> dict:
    out = {
        "kind": F.kind,
        "module": module_summary(F.module),
        "length": F.length,
        "chain": [s.basis.tolist() for s in kernel_chain(F)],
        "factors": [{**module_summary(f.module), "certificate": dict(f.certificate)} for f in F.factors],
    }
    if F.kind == COFILTRATION:
        out["epis"] = [f.matrix.tolist() for f in F.epis]
    closures = getattr(F, "closures", None)
    if closures:
        out["closures"] = dict(closures)
    return out


def filtration_from_dict(M: Module, d: dict, source: str = "<filtration>") -> Filtration:
    kind = d.get("kind")
    if kind not in (FILTRATION, COFILTRATION):
        raise ParseError(f"unknown filtration kind {kind!r}", source)
    chain = []
    for k, rows in enumerate(d.get("chain", [])):
        arr = la.asmat(rows, M.p, M.dim) if rows else la.zeros(0, M.dim)
        if arr.shape[1] != M.dim:
            raise ParseError(f"chain entry {k} has the wrong width", source)
        try:
            chain.append(Submodule(M, arr))
        except FiltralError as exc:
            raise ParseError(f"chain entry {k}: {exc}", source) from None
    if kind == FILTRATION:
        return Filtration.from_chain(M, chain)
    epis, prev = [], M
    for k, sub in enumerate(chain[1:], start=1):
        Q, proj = quotient(M, sub)
        if k == 1:
            mat = proj.matrix
        else:
            comp = la.complement_columns(chain[k - 1].pivots, M.dim)
            mat = la.identity(M.dim)[comp] @ proj.matrix % M.p
        epis.append(Morphism(prev, Q, mat.reshape(prev.dim, Q.dim), check=False))
        prev = Q
    return Filtration.from_epis(M, epis)


def parse_filtration(path, M: Module) -> Filtration:
    doc = _read(path)
    return filtration_from_dict(M, doc.data, str(path))


def filtration_dot(F: Filtration) -> str:
    """Linear digraph ``M_0 -> M_1 -> ... -> M_n`` with factor labels on the edges."""
    chain = kernel_chain(F)
    lines = ["digraph filtration {", "  rankdir=LR;"]
    for k, s in enumerate(chain):
        lines.append(f'  m{k} [label="M{k} dim {s.dim}"];')
    for k, fac in enumerate(F.factors, start=1):
        lab = fac.module.loewy_label().replace('"', "'")
        lines.append(f'  m{k - 1} -> m{k} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
