"""Subcategories given by decidable predicates, and their boundary classes.

For a class ``C`` of modules:

* ``under(C)``: nonzero ``M`` in ``C`` with no proper nonzero submodule in ``C``;
* ``over(C)``: nonzero ``M`` in ``C`` with no proper nonzero quotient in ``C``.

Membership is three-valued (``yes``/``no``/``unknown``); ``unknown`` only comes
from undecided homological dimensions or exhausted search budgets, and a
single ``unknown`` inside a boundary quantifier makes the boundary verdict
``unknown``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg as la
from .config import Budget, default_budget
from .errors import ClosureViolation, MemberUnknown, NotAMember
from .filtration import COFILTRATION, FILTRATION, Factor, Filtration, theta_filtration
from .homology import ext_dim, inj_dim, proj_dim, registry, tensor_over, tor1_over
from .module import (
    Module,
    Morphism,
    Submodule,
    all_submodules,
    decompose,
    direct_sum,
    hom_dim,
    is_isomorphic,
    quotient,
)
from .parallel import pmap

YES, NO, UNKNOWN = "yes", "no", "unknown"
UNDER, OVER = "under", "over"
CLOSURE_FLAGS = ("extensions", "ker_epi", "coker_mono", "submodules", "quotients", "direct_sums")


@dataclass
class Verdict:
    value: str
    reason: str = ""
    witness: object = None

    @property
    def yes(self) -> bool:
        return self.value == YES

    @property
    def no(self) -> bool:
        return self.value == NO

    @property
    def unknown(self) -> bool:
        return self.value == UNKNOWN

    def to_dict(self) -> dict:
        out = {"verdict": self.value}
        if self.reason:
            out["reason"] = self.reason
        return out


def _tri(flag: bool | None, reason: str = "") -> Verdict:
    if flag is None:
        return Verdict(UNKNOWN, reason)
    return Verdict(YES if flag else NO, reason)


# -- predicates -------------------------------------------------------------------


class Predicate:
    kind = "custom"
    default_closures: dict[str, str] = {}

    def evaluate(self, M: Module, budget: Budget) -> Verdict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"kind": self.kind}


class All(Predicate):
    kind = "all"
    default_closures = {f: "declared" for f in CLOSURE_FLAGS}

    def evaluate(self, M, budget):
        return Verdict(YES)


class PdLe(Predicate):
    kind = "pd_le"
    default_closures = {"extensions": "declared", "ker_epi": "declared", "direct_sums": "declared"}

    def __init__(self, n: int):
        self.n = n

    def evaluate(self, M, budget):
        v = proj_dim(M, budget.pd_cutoff)
        return _tri(v.at_most(self.n), f"pd {v}")

    def to_dict(self):
        return {"kind": self.kind, "n": self.n}


class PdFinite(Predicate):
    kind = "pd_finite"
    default_closures = {"extensions": "declared", "ker_epi": "declared", "coker_mono": "declared", "direct_sums": "declared"}

    def __init__(self, cutoff: int | None = None):
        self.cutoff = cutoff

    def evaluate(self, M, budget):
        v = proj_dim(M, self.cutoff or budget.pd_cutoff)
        if v.is_unknown:
            return Verdict(UNKNOWN, f"pd {v}", v)
        return Verdict(YES if v.is_finite else NO, f"pd {v}", v)

    def to_dict(self):
        out = {"kind": self.kind}
        if self.cutoff:
            out["cutoff"] = self.cutoff
        return out


class IdLe(Predicate):
    kind = "id_le"
    default_closures = {"extensions": "declared", "coker_mono": "declared", "direct_sums": "declared"}

    def __init__(self, n: int):
        self.n = n

    def evaluate(self, M, budget):
        v = inj_dim(M, budget.pd_cutoff)
        return _tri(v.at_most(self.n), f"id {v}")

    def to_dict(self):
        return {"kind": self.kind, "n": self.n}


class IdFinite(Predicate):
    kind = "id_finite"
    default_closures = {"extensions": "declared", "ker_epi": "declared", "coker_mono": "declared", "direct_sums": "declared"}

    def evaluate(self, M, budget):
        v = inj_dim(M, budget.pd_cutoff)
        if v.is_unknown:
            return Verdict(UNKNOWN, f"id {v}")
        return Verdict(YES if v.is_finite else NO, f"id {v}")


def deep_syzygy_summands(M: Module, n: int, cutoff: int) -> list[Module] | None:
    """Representatives of indecomposable summands of ``Omega^k M`` over all ``k >= n``.

    None when the sequence of summand sets does not become periodic within
    ``n + cutoff`` steps.
    """
    if M.dim == 0:
        return []
    reg = registry(M.algebra)
    cur = frozenset(reg.classify(X) for X in decompose(M))
    seen = set()
    collected: set[int] = set()
    for k in range(n + cutoff + 1):
        if k >= n:
            if cur in seen:
                return [reg.reps[c] for c in sorted(collected)]
            seen.add(cur)
            collected |= cur
        if not cur:
            return [reg.reps[c] for c in sorted(collected)]
        cur = frozenset(c2 for c in cur for c2 in reg.children(c))
    return None


class PerpLeft(Predicate):
    """``M`` with ``Ext^i(M, X) = 0`` for all ``i > n`` and ``X`` in the sample."""

    kind = "perp_left"
    default_closures = {"extensions": "declared", "ker_epi": "declared", "direct_sums": "declared"}

    def __init__(self, sample: list[Module], n: int):
        self.sample = list(sample)
        self.n = n

    def evaluate(self, M, budget):
        deep = deep_syzygy_summands(M, self.n, budget.pd_cutoff)
        if deep is None:
            return Verdict(UNKNOWN, "syzygies not periodic within the cutoff")
        for Y in deep:
            for X in self.sample:
                if ext_dim(1, Y, X):
                    return Verdict(NO, "nonvanishing Ext beyond degree n")
        return Verdict(YES)

    def to_dict(self):
        return {"kind": self.kind, "n": self.n, "sample_size": len(self.sample)}


class PerpRight(Predicate):
    """``M`` with ``Ext^i(X, M) = 0`` for all ``i > n`` and ``X`` in the sample."""

    kind = "perp_right"
    default_closures = {"extensions": "declared", "coker_mono": "declared", "direct_sums": "declared"}

    def __init__(self, sample: list[Module], n: int):
        self.sample = list(sample)
        self.n = n
        self._deep: list | None = None
        self._lock = threading.Lock()

    def _sources(self, cutoff):
        with self._lock:
            if self._deep is None:
                out = []
                for X in self.sample:
                    d = deep_syzygy_summands(X, self.n, cutoff)
                    if d is None:
                        return None
                    out.extend(d)
                self._deep = out
            return self._deep

    def evaluate(self, M, budget):
        srcs = self._sources(budget.pd_cutoff)
        if srcs is None:
            return Verdict(UNKNOWN, "sample syzygies not periodic within the cutoff")
        for Y in srcs:
            if ext_dim(1, Y, M):
                return Verdict(NO, "nonvanishing Ext beyond degree n")
        return Verdict(YES)

    def to_dict(self):
        return {"kind": self.kind, "n": self.n, "sample_size": len(self.sample)}


class Torsion(Predicate):
    """``Ext^1(T, M) = 0``: the torsion class generated by a tilting module."""

    kind = "torsion"
    default_closures = {"extensions": "declared", "quotients": "declared", "coker_mono": "declared", "direct_sums": "declared"}

    def __init__(self, T: Module):
        self.T = T

    def evaluate(self, M, budget):
        return Verdict(NO if ext_dim(1, self.T, M) else YES)


class TorsionFree(Predicate):
    """``Hom(T, M) = 0``."""

    kind = "torsion_free"
    default_closures = {"extensions": "declared", "submodules": "declared", "ker_epi": "declared", "direct_sums": "declared"}

    def __init__(self, T: Module):
        self.T = T

    def evaluate(self, M, budget):
        return Verdict(NO if hom_dim(self.T, M) else YES)


class TensorVanish(Predicate):
    """``M (x)_B T = 0`` for a bimodule ``T``."""

    kind = "tensor_vanish"
    default_closures = {"extensions": "declared", "quotients": "declared", "coker_mono": "declared", "direct_sums": "declared"}

    def __init__(self, T):
        self.T = T

    def evaluate(self, M, budget):
        return Verdict(NO if tensor_over(M, self.T).module.dim else YES)


class Tor1Vanish(Predicate):
    """``Tor_1^B(M, T) = 0``."""

    kind = "tor1_vanish"
    default_closures = {"extensions": "declared", "submodules": "declared", "ker_epi": "declared", "direct_sums": "declared"}

    def __init__(self, T):
        self.T = T

    def evaluate(self, M, budget):
        return Verdict(NO if tor1_over(M, self.T).dim else YES)


class FiltClosure(Predicate):
    """Modules admitting a filtration with factors in ``theta``."""

    kind = "filt_closure"
    default_closures = {"extensions": "declared"}

    def __init__(self, theta: list[Module], label: str = "theta"):
        self.theta = [X for X in theta if X.dim]
        self.label = label

    def evaluate(self, M, budget):
        if M.dim == 0:
            return Verdict(YES, "zero module")
        found = theta_filtration(M, self.theta, budget.submodule_cap)
        return Verdict(YES if found is not None else NO)

    def to_dict(self):
        return {"kind": self.kind, "theta": self.label, "size": len(self.theta)}


class Custom(Predicate):
    kind = "custom"

    def __init__(self, fn: Callable[[Module], bool | None], label: str = "custom", closures: dict | None = None):
        self.fn = fn
        self.label = label
        self.default_closures = dict(closures or {})

    def evaluate(self, M, budget):
        return _tri(self.fn(M))

    def to_dict(self):
        return {"kind": self.kind, "label": self.label}


# -- subcategory specs -----------------------------------------------------------------


class SubcatSpec:
    """A class of modules: predicate, closure flags, budget, and a membership memo.

    Closure flag values: ``declared`` (known from theory, still sample-checked
    before use), ``declared-trusted`` (never checked), ``verified-on-samples``,
    ``violated`` and ``unknown``.
    """

    def __init__(self, name: str, predicate: Predicate, closures: dict | None = None, budget: Budget | None = None):
        self.name = name
        self.predicate = predicate
        self.closures = {f: "unknown" for f in CLOSURE_FLAGS}
        self.closures.update(predicate.default_closures)
        if closures:
            self.closures.update(closures)
        self.budget = budget or default_budget()
        self._lock = threading.RLock()
        self._exact: dict[bytes, Verdict] = {}
        self._buckets: dict[tuple, list[tuple[Module, Verdict]]] = {}
        self._boundary: dict[tuple[str, bytes], "BoundaryVerdict"] = {}

    def __repr__(self) -> str:
        return f"SubcatSpec({self.name})"

    def to_dict(self) -> dict:
        return {"name": self.name, "predicate": self.predicate.to_dict(), "closures": dict(sorted(self.closures.items()))}

    def member(self, M: Module) -> Verdict:
        k = _exact_key(M)
        with self._lock:
            got = self._exact.get(k)
            if got is not None:
                return got
            for rep, v in self._buckets.get(M.invariants, []):
                if is_isomorphic(M, rep):
                    self._exact[k] = v
                    return v
        v = self.predicate.evaluate(M, self.budget)
        with self._lock:
            self._exact[k] = v
            self._buckets.setdefault(M.invariants, []).append((M, v))
        return v


def member(C: SubcatSpec, M: Module) -> Verdict:
    return C.member(M)


def _exact_key(M: Module) -> bytes:
    return M.action.tobytes() + bytes(str(M.action.shape), "ascii")


# -- boundary classes ------------------------------------------------------------------


@dataclass
class BoundaryVerdict:
    value: str
    side: str
    witness: Submodule | None = None
    reason: str = ""
    unknown_count: int = 0

    @property
    def yes(self) -> bool:
        return self.value == YES

    def to_dict(self) -> dict:
        out = {"verdict": self.value, "side": self.side}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = {
                "kind": "submodule" if self.side == UNDER else "kernel",
                "basis": self.witness.basis.tolist(),
                "dim": self.witness.dim,
            }
        if self.unknown_count:
            out["unknown_count"] = self.unknown_count
        return out


def _ordered_candidates(M: Module, side: str, cap: int) -> list[Submodule]:
    subs = [L for L in all_submodules(M, cap) if 0 < L.dim < M.dim]
    if side == UNDER:
        return subs  # by length of the submodule, then echelon order
    # smallest quotients first: largest kernels, then echelon order
    return sorted(subs, key=lambda L: (-L.dim, tuple(L.basis.ravel().tolist())))


def _candidate_module(M: Module, L: Submodule, side: str) -> Module:
    return L.as_module() if side == UNDER else quotient(M, L)[0]


def boundary_member(C: SubcatSpec, M: Module, side: str) -> BoundaryVerdict:
    """Is ``M`` in ``under(C)`` (side ``under``) or ``over(C)`` (side ``over``)?

    ``no`` carries a witness: the smallest proper nonzero submodule in ``C``
    (side ``under``) or the kernel of the smallest proper nonzero quotient in
    ``C`` (side ``over``).
    """
    if side not in (UNDER, OVER):
        raise ValueError(f"side must be {UNDER!r} or {OVER!r}")
    if M.dim == 0:
        return BoundaryVerdict(NO, side, reason="zero module")
    key = (side, _exact_key(M))
    with C._lock:
        got = C._boundary.get(key)
    if got is not None:
        return got
    v = C.member(M)
    if v.no:
        out = BoundaryVerdict(NO, side, reason="not in the class")
    elif v.unknown:
        out = BoundaryVerdict(UNKNOWN, side, reason=f"membership undecided ({v.reason})")
    else:
        unknown = 0
        out = None
        for L in _ordered_candidates(M, side, C.budget.submodule_cap):
            w = C.member(_candidate_module(M, L, side))
            if w.yes:
                what = "submodule" if side == UNDER else "quotient"
                out = BoundaryVerdict(NO, side, witness=L, reason=f"proper nonzero {what} in the class", unknown_count=unknown)
                break
            if w.unknown:
                unknown += 1
        if out is None:
            if unknown:
                out = BoundaryVerdict(UNKNOWN, side, reason="undecided candidates", unknown_count=unknown)
            else:
                out = BoundaryVerdict(YES, side)
    with C._lock:
        C._boundary[key] = out
    return out


# -- descent and ascent -----------------------------------------------------------


@dataclass
class Walk:
    """Chain of submodules of ``module`` produced by descent or ascent."""

    module: Module
    side: str
    chain: list[Submodule]
    terminal: Module
    terminal_sub: Submodule


def _as_sub_of(M: Module, rows: np.ndarray) -> Submodule:
    return Submodule(M, rows, check=False)


def _require_member(C: SubcatSpec, M: Module) -> None:
    v = C.member(M)
    if v.no:
        raise NotAMember(f"module is not in {C.name} ({v.reason or 'predicate fails'})")
    if not v.yes:
        raise MemberUnknown(f"membership in {C.name} undecided ({v.reason})")


def descend_to_under(C: SubcatSpec, M: Module) -> Walk:
    """Strictly descending ``M > M_1 > ... > M_k`` in ``C`` ending in ``under(C)``.

    Each step moves to a minimal-length proper submodule in ``C``, which
    already lies in ``under(C)``, so chains have length at most one.
    """
    if M.dim == 0:
        raise MemberUnknown("descent needs a nonzero module")
    _require_member(C, M)
    p = M.p
    cur_sub = M.whole()
    chain: list[Submodule] = []
    while True:
        cur = cur_sub.as_module()
        b = boundary_member(C, cur, UNDER)
        if b.value == YES:
            return Walk(M, UNDER, chain, cur, cur_sub)
        if b.value == UNKNOWN:
            raise MemberUnknown(f"boundary membership undecided during descent: {b.reason}")
        rows = b.witness.basis @ cur_sub.inclusion().matrix % p
        cur_sub = _as_sub_of(M, rows)
        chain.append(cur_sub)


def ascend_to_over(C: SubcatSpec, M: Module) -> Walk:
    """Strictly ascending kernels ``0 < L_1 < ... < L_k`` with ``M/L_k`` in ``over(C)``."""
    if M.dim == 0:
        raise MemberUnknown("ascent needs a nonzero module")
    _require_member(C, M)
    p = M.p
    ker = M.zero_sub()
    chain: list[Submodule] = []
    while True:
        Q, proj = quotient(M, ker)
        b = boundary_member(C, Q, OVER)
        if b.value == YES:
            return Walk(M, OVER, chain, Q, ker)
        if b.value == UNKNOWN:
            raise MemberUnknown(f"boundary membership undecided during ascent: {b.reason}")
        comp = la.complement_columns(ker.pivots, M.dim)
        lifted = la.zeros(b.witness.dim, M.dim)
        lifted[:, comp] = b.witness.basis
        ker = _as_sub_of(M, la.span_sum(ker.basis, lifted, p))
        chain.append(ker)


# -- closure verification -----------------------------------------------------------


def local_sequences(M: Module, limit: int, seed: int, cap: int) -> list[tuple[Submodule, Submodule]]:
    """Pairs ``L < K`` of submodules of ``M`` giving ``0 -> L -> K -> K/L -> 0``."""
    lattice = all_submodules(M, cap)
    pairs = [(L, K) for K in lattice for L in lattice if L.dim < K.dim and K.contains(L)]
    if len(pairs) <= limit:
        return pairs
    rng = np.random.default_rng(seed)
    pick = sorted(rng.choice(len(pairs), size=limit, replace=False).tolist())
    return [pairs[i] for i in pick]


def _ses_modules(L: Submodule, K: Submodule) -> tuple[Module, Module, Module]:
    Km = K.as_module()
    sub = Submodule(Km, L.basis[:, K.pivots], check=False)
    return sub.as_module(), Km, quotient(Km, sub)[0]


def check_closure(C: SubcatSpec, flag: str, sequences) -> tuple[str, object]:
    """Check one closure property on ``0 -> L -> M -> N -> 0`` samples.

    Returns ``(status, witness)`` where status is ``verified-on-samples``,
    ``violated`` or ``unknown``.
    """
    undecided = False
    for Lm, Mm, Nm in sequences:
        if flag == "extensions":
            hyp, concl = (Lm, Nm), Mm
        elif flag == "ker_epi":
            hyp, concl = (Mm, Nm), Lm
        elif flag == "coker_mono":
            hyp, concl = (Lm, Mm), Nm
        elif flag == "submodules":
            hyp, concl = (Mm,), Lm
        elif flag == "quotients":
            hyp, concl = (Mm,), Nm
        elif flag == "direct_sums":
            hyp, concl = (Lm, Nm), direct_sum(Lm, Nm)
        else:
            raise ValueError(f"unknown closure flag {flag!r}")
        hv = [C.member(X) for X in hyp]
        if any(h.no for h in hv):
            continue
        if any(h.unknown for h in hv):
            undecided = True
            continue
        c = C.member(concl)
        if c.no:
            return "violated", (Lm, Mm, Nm)
        if c.unknown:
            undecided = True
    return ("unknown" if undecided else "verified-on-samples"), None


def ensure_closures(C: SubcatSpec, flags: tuple[str, ...], M: Module) -> dict[str, str]:
    """Sample-verify the closure flags an operation relies on; raise on a violation."""
    status = {}
    seqs = None
    for flag in flags:
        declared = C.closures.get(flag, "unknown")
        if declared == "declared-trusted":
            status[flag] = declared
            continue
        if seqs is None:
            pairs = local_sequences(M, C.budget.closure_samples, C.budget.seed, C.budget.submodule_cap)
            seqs = [_ses_modules(L, K) for L, K in pairs]
        st, wit = check_closure(C, flag, seqs)
        if st == "violated":
            raise ClosureViolation(f"{C.name} is not closed under {flag}", wit)
        status[flag] = st if declared != "unknown" or st != "verified-on-samples" else st
    return status


# -- filtrations --------------------------------------------------------------------


def _certificate(C: SubcatSpec, side: str) -> dict:
    return {"class": side, "spec": C.name, "verdict": YES}


def build_filtration(C: SubcatSpec, M: Module, check_closures: bool = True) -> Filtration:
    """Filtration of ``M`` with every factor in ``over(C)``.

    Repeatedly ascends to a quotient ``M_i/L`` in ``over(C)`` and continues
    with the kernel ``L``, which must lie in ``C`` when ``C`` is closed under
    kernels of epimorphisms.
    """
    closure_status = ensure_closures(C, ("extensions", "ker_epi"), M) if check_closures else {}
    if M.dim == 0:
        return Filtration(FILTRATION, M, chain=[M.zero_sub()], factors=[])
    p = M.p
    cur = M.whole()
    tops: list[tuple[Submodule, Module]] = []
    while cur.dim:
        cur_mod = cur.as_module()
        walk = ascend_to_over(C, cur_mod)
        tops.append((cur, walk.terminal))
        ker = walk.terminal_sub
        rows = ker.basis @ cur.inclusion().matrix % p
        nxt = _as_sub_of(M, rows)
        if nxt.dim:
            v = C.member(nxt.as_module())
            if v.no:
                raise ClosureViolation(f"kernel outside {C.name}: the class is not closed under kernels of epimorphisms", nxt)
            if v.unknown:
                raise MemberUnknown(f"kernel membership undecided ({v.reason})")
        cur = nxt
    chain = [M.zero_sub()] + [s for s, _ in reversed(tops)]
    factors = [Factor(Q, _certificate(C, OVER)) for _, Q in reversed(tops)]
    F = Filtration(FILTRATION, M, chain=chain, factors=factors)
    F.closures = closure_status
    return F


def build_cofiltration(C: SubcatSpec, M: Module, check_closures: bool = True) -> Filtration:
    """Chain of proper epimorphisms from ``M`` to 0 with every kernel in ``under(C)``."""
    closure_status = ensure_closures(C, ("extensions", "coker_mono"), M) if check_closures else {}
    if M.dim == 0:
        return Filtration(COFILTRATION, M, epis=[], factors=[])
    epis: list[Morphism] = []
    factors: list[Factor] = []
    cur = M
    while cur.dim:
        walk = descend_to_under(C, cur)
        K = walk.terminal_sub
        Q, proj = quotient(cur, K)
        if Q.dim:
            v = C.member(Q)
            if v.no:
                raise ClosureViolation(f"cokernel outside {C.name}: the class is not closed under cokernels of monomorphisms", Q)
            if v.unknown:
                raise MemberUnknown(f"cokernel membership undecided ({v.reason})")
        epis.append(proj)
        factors.append(Factor(walk.terminal, _certificate(C, UNDER)))
        cur = Q
    F = Filtration(COFILTRATION, M, epis=epis, factors=factors)
    F.closures = closure_status
    return F


def certify_factors(C: SubcatSpec, F: Filtration, side: str) -> list[BoundaryVerdict]:
    return [boundary_member(C, f.module, side) for f in F.factors]


# -- Ext/Tor vanishing reduction --------------------------------------------------------


@dataclass(frozen=True)
class Functor:
    """``ext_cov``: Ext^n(M, -); ``ext_contra``: Ext^n(-, M);
    ``tor_right``: Tor_n(-, N) with ``N`` a right module over the opposite algebra;
    ``tor_left``: Tor_n(N, -) over the opposite algebra, ``N`` a right module there.
    """

    kind: str
    n: int
    module: Module

    def dim(self, X: Module) -> int:
        if self.kind == "ext_cov":
            return ext_dim(self.n, self.module, X)
        if self.kind == "ext_contra":
            return ext_dim(self.n, X, self.module)
        if self.kind == "tor_right":
            # dim Tor_n(X, N) = dim Ext^n(X, D N)
            return ext_dim(self.n, X, self.module.dual())
        if self.kind == "tor_left":
            # X viewed as a left module over A^op through duality
            return ext_dim(self.n, self.module, X.dual())
        raise ValueError(f"unknown functor {self.kind!r}")

    def describe(self) -> str:
        return f"{self.kind}({self.n})"


def vanishing_reduction(C: SubcatSpec, functor: Functor, side: str, sample: list[Module]) -> dict:
    """Compare vanishing of a functor on ``sample & C`` and on ``sample & boundary(C)``."""
    need = "ker_epi" if side == OVER else "coker_mono"
    in_c, in_b, undecided = [], [], 0
    for X in sample:
        if X.dim == 0:
            continue
        v = C.member(X)
        if v.unknown:
            undecided += 1
            continue
        if not v.yes:
            continue
        in_c.append(X)
        b = boundary_member(C, X, side)
        if b.value == YES:
            in_b.append(X)
        elif b.value == UNKNOWN:
            undecided += 1
    vals_c = [functor.dim(X) for X in in_c]
    vals_b = [functor.dim(X) for X in in_b]
    van_c = all(v == 0 for v in vals_c)
    van_b = all(v == 0 for v in vals_b)
    report = {
        "functor": functor.describe(),
        "side": side,
        "closure_required": need,
        "closure_status": C.closures.get(need, "unknown"),
        "members": len(in_c),
        "boundary_members": len(in_b),
        "vanishes_on_class": van_c,
        "vanishes_on_boundary": van_b,
        "agreement": van_c == van_b,
        "undecided": undecided,
    }
    if not report["agreement"]:
        bad = min((X for X, v in zip(in_c, vals_c) if v), key=lambda X: X.dim)
        report["counterexample"] = {"dim_vector": list(bad.dim_vector), "iso_label": bad.loewy_label()}
    return report


# -- enumeration of boundary classes ----------------------------------------------------


@dataclass
class BoundaryResult:
    side: str
    members: list[Module]
    unknown: list[Module]
    source_size: int

    def labels(self) -> list[str]:
        return [M.loewy_label() for M in self.members]


def dedup(mods: list[Module]) -> list[Module]:
    out: list[Module] = []
    for M in mods:
        if not any(is_isomorphic(M, N) for N in out if N.invariants == M.invariants):
            out.append(M)
    return out


def enumerate_boundary(C: SubcatSpec, side: str, source: list[Module], threads: int | None = None) -> BoundaryResult:
    """Members of ``source`` (deduplicated up to iso) lying in the chosen boundary class."""
    mods = dedup([M for M in source if M.dim])
    verdicts = pmap(lambda M: boundary_member(C, M, side), mods, threads)
    members = [M for M, v in zip(mods, verdicts) if v.value == YES]
    unknown = [M for M, v in zip(mods, verdicts) if v.value == UNKNOWN]
    return BoundaryResult(side, members, unknown, len(mods))


def minimality_check(C: SubcatSpec, over_members: list[Module]) -> list[str]:
    """Greedy removal: no member of ``over(C)`` is filtered by the others.

    Returns the labels of members that the rest can filter (empty means minimal).
    """
    bad = []
    for k, X in enumerate(over_members):
        rest = over_members[:k] + over_members[k + 1:]
        if theta_filtration(X, rest, C.budget.submodule_cap) is not None:
            bad.append(X.loewy_label())
    return bad


# -- finitistic dimension ------------------------------------------------------------------


def pd_spec(n: int | None = None, budget: Budget | None = None) -> SubcatSpec:
    if n is None:
        return SubcatSpec("pd-finite", PdFinite(), budget=budget)
    return SubcatSpec(f"pd-le-{n}", PdLe(n), budget=budget)


def findim_certificate(universe, n: int, budget: Budget | None = None, threads: int | None = None) -> dict:
    """Check ``under(P<=n+1) <= P<=n`` and compute ``sup pd`` over ``under(P)`` on a universe.

    Every claim is relative to the enumerated universe, not a global proof.
    """
    budget = budget or default_budget()
    mods = [M for M in universe if M.dim]
    C1 = pd_spec(n + 1, budget)
    und1 = enumerate_boundary(C1, UNDER, mods, threads)
    pds = pmap(lambda M: proj_dim(M, budget.pd_cutoff), und1.members, threads)
    viol = [M.loewy_label() for M, v in zip(und1.members, pds) if v.at_most(n) is not True]
    CP = pd_spec(None, budget)
    undP = enumerate_boundary(CP, UNDER, mods, threads)
    pdsP = pmap(lambda M: proj_dim(M, budget.pd_cutoff), undP.members, threads)
    sup = max((v.n for v in pdsP if v.is_finite), default=0)
    inclusion = not viol and not und1.unknown
    return {
        "n": n,
        "universe_size": len(mods),
        "max_length": max((M.dim for M in mods), default=0),
        "under_pd_le_n_plus_1": [{"iso_label": M.loewy_label(), "pd": v.to_dict()} for M, v in zip(und1.members, pds)],
        "inclusion_holds": inclusion,
        "violations": viol,
        "undecided": [M.loewy_label() for M in und1.unknown + undP.unknown],
        "under_pd_finite": [{"iso_label": M.loewy_label(), "pd": v.to_dict()} for M, v in zip(undP.members, pdsP)],
        "sup_pd_under_pd_finite": sup,
        "certified_bound": n if inclusion else None,
        "scope": "modules of the enumerated universe only",
    }


# -- chains of subcategories ------------------------------------------------------------------


INF = 10**9


@dataclass
class ChainSpec:
    """Increasing chain ``C_0 <= C_1 <= ...`` given by a builder ``n -> SubcatSpec``.

    ``mode`` is ``G1`` (projective sources) or ``G2`` (injective sinks).
    """

    name: str
    builder: Callable[[int], SubcatSpec]
    mode: str = "G1"
    max_level: int = 6
    _specs: dict = field(default_factory=dict, repr=False)
    _levels: dict = field(default_factory=dict, repr=False)

    def spec(self, n: int) -> SubcatSpec:
        if n not in self._specs:
            self._specs[n] = self.builder(n)
        return self._specs[n]

    def level(self, M: Module):
        """Least ``n <= max_level`` with ``M`` in ``C_n``; ``INF`` if none; None if undecided."""
        k = _exact_key(M)
        if k in self._levels:
            return self._levels[k]
        out = INF
        for n in range(self.max_level + 1):
            v = self.spec(n).member(M)
            if v.yes:
                out = n
                break
            if v.unknown:
                out = None
                break
        self._levels[k] = out
        return out


def pd_chain(max_level: int = 6, budget: Budget | None = None) -> ChainSpec:
    return ChainSpec("pd", lambda n: SubcatSpec(f"pd-le-{n}", PdLe(n), budget=budget), "G1", max_level)


def id_chain(max_level: int = 6, budget: Budget | None = None) -> ChainSpec:
    return ChainSpec("id", lambda n: SubcatSpec(f"id-le-{n}", IdLe(n), budget=budget), "G2", max_level)


def perp_left_chain(sample: list[Module], max_level: int = 6, budget: Budget | None = None) -> ChainSpec:
    return ChainSpec("perp-left", lambda n: SubcatSpec(f"perp-left-{n}", PerpLeft(sample, n), budget=budget), "G1", max_level)


def perp_right_chain(sample: list[Module], max_level: int = 6, budget: Budget | None = None) -> ChainSpec:
    return ChainSpec("perp-right", lambda n: SubcatSpec(f"perp-right-{n}", PerpRight(sample, n), budget=budget), "G2", max_level)


def _mx(*xs):
    return max(xs)


def _axioms(mode: str, l, m, n) -> list[tuple[str, object, object]]:
    """(name, bound, actual) triples for one short exact sequence with levels l, m, n."""
    out = []
    if mode == "G1":
        out.append(("G1a", _mx(l + 1, m), n))
        out.append(("G1b", _mx(m, n - 1), l))
    else:
        out.append(("G2a", _mx(l - 1, m), n))
        out.append(("G2b", _mx(m, n + 1), l))
    out.append(("G3", _mx(l, n), m))
    return out


def sample_sequences(universe, limit: int, seed: int, cap: int) -> list[tuple[Module, Module, Module]]:
    """Short exact sequences ``0 -> L -> M -> M/L -> 0`` from the submodules of universe members."""
    seqs = []
    for M in universe:
        if M.dim == 0:
            continue
        for L in all_submodules(M, cap):
            if 0 < L.dim < M.dim:
                seqs.append((M, L))
    if len(seqs) > limit:
        rng = np.random.default_rng(seed)
        pick = sorted(rng.choice(len(seqs), size=limit, replace=False).tolist())
        seqs = [seqs[i] for i in pick]
    return [(L.as_module(), M, quotient(M, L)[0]) for M, L in seqs]


def chain_check(chain: ChainSpec, sequences, universe, n: int, m: int) -> dict:
    """Check the chain axioms on sampled sequences and the stabilization equivalences on a universe."""
    mode = chain.mode
    failures, undecided, beyond = [], 0, 0
    for L, M, N in sequences:
        lv = [chain.level(X) for X in (L, M, N)]
        if any(x is None for x in lv):
            undecided += 1
            continue
        l, mm, nn = lv
        for name, bound, actual in _axioms(mode, l, mm, nn):
            if bound >= INF:
                continue
            if actual > bound:
                if actual == INF and bound >= chain.max_level:
                    beyond += 1
                    continue
                failures.append({"axiom": name, "levels": [_lvl(l), _lvl(mm), _lvl(nn)], "labels": [L.loewy_label(), M.loewy_label(), N.loewy_label()]})
    mods = [X for X in universe if X.dim]
    eq = stabilization_equivalences(chain, mods, n, m)
    return {
        "chain": chain.name,
        "mode": mode,
        "sequences": len(sequences),
        "axiom_failures": failures,
        "undecided_sequences": undecided,
        "beyond_level_cap": beyond,
        "axioms_hold": not failures,
        "equivalences": eq,
    }


def _lvl(x):
    return "inf" if x == INF else x


def _classes(chain: ChainSpec, mods: list[Module], k: int, side: str) -> set[int]:
    C = chain.spec(k)
    return {i for i, M in enumerate(mods) if boundary_member(C, M, side).value == YES}


def _members(chain: ChainSpec, mods: list[Module], k: int) -> set[int]:
    out = set()
    for i, M in enumerate(mods):
        lv = chain.level(M)
        if lv is not None and lv <= k:
            out.add(i)
    return out


def stabilization_equivalences(chain: ChainSpec, mods: list[Module], n: int, m: int) -> dict:
    """Evaluate, on ``mods``: (a) ``C_n = C_m``, (b) ``over(C_m) <= C_n``, (c) ``under(C_m) <= C_n``,
    and the one-step versions with ``C_{n+1}`` together with stabilization up to the level cap.
    """
    Cn = _members(chain, mods, n)
    Cm = _members(chain, mods, m)
    a = Cn == Cm
    b = _classes(chain, mods, m, OVER) <= Cn
    c = _classes(chain, mods, m, UNDER) <= Cn
    stab = all(_members(chain, mods, k) == Cn for k in range(n, chain.max_level + 1))
    b1 = _classes(chain, mods, n + 1, OVER) <= Cn
    c1 = _classes(chain, mods, n + 1, UNDER) <= Cn
    return {
        "n": n,
        "m": m,
        "lemma": {"equal": a, "over_inside": b, "under_inside": c, "consistent": a == b == c},
        "theorem": {"stable": stab, "over_next_inside": b1, "under_next_inside": c1, "consistent": stab == b1 == c1},
    }


def conjecture_probe(chain: ChainSpec, universe, n: int) -> dict:
    """Compare stabilization from ``n`` with ``over(C_n) = under(C_n)`` on a universe."""
    mods = [X for X in universe if X.dim]
    Cn = _members(chain, mods, n)
    stab = all(_members(chain, mods, k) == Cn for k in range(n, chain.max_level + 1))
    ov = _classes(chain, mods, n, OVER)
    un = _classes(chain, mods, n, UNDER)
    agree = stab == (ov == un)
    out = {
        "chain": chain.name,
        "n": n,
        "stable_from_n": stab,
        "over_equals_under": ov == un,
        "agreement": agree,
        "over": sorted(mods[i].loewy_label() for i in ov),
        "under": sorted(mods[i].loewy_label() for i in un),
        "scope": "evidence on the enumerated universe only",
    }
    if not agree:
        out["flag"] = "counterexample candidate; needs review"
    return out


def intersection_check(chain: ChainSpec, universe, n: int) -> dict:
    """``intersection_{i >= n} under(C_i) == intersection_{i >= n} over(C_i)`` for ``i`` up to the level cap."""
    mods = [X for X in universe if X.dim]
    und = set(range(len(mods)))
    ov = set(range(len(mods)))
    for i in range(n, chain.max_level + 1):
        und &= _classes(chain, mods, i, UNDER)
        ov &= _classes(chain, mods, i, OVER)
    return {
        "n": n,
        "levels": [n, chain.max_level],
        "under": sorted(mods[i].loewy_label() for i in und),
        "over": sorted(mods[i].loewy_label() for i in ov),
        "equal": und == ov,
    }
