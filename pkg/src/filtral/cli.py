"""Command line entry point: ``filtral <group> <action> [flags]``.

Every command prints one JSON report on stdout. Exit status is 0 on success,
2 when the answer is undecided within the budget, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .algebra import Algebra, validate_algebra
from .config import Budget, default_budget
from .enumerate import enumerate_modules
from .errors import CapExceeded, FiltralError, MemberUnknown, ParseError, SearchCapExceeded, ValidationFailure
from .filtration import COFILTRATION, FILTRATION, convert
from .homology import inj_dim, proj_dim
from .module import Module, decompose, structure
from .parallel import set_threads
from .strat import DELTA, DELTA_STAR, NABLA, NABLA_STAR, standard_modules, theta_boundary_check
from .subcat import (
    OVER,
    UNDER,
    UNKNOWN,
    boundary_member,
    build_cofiltration,
    build_filtration,
    certify_factors,
    chain_check,
    enumerate_boundary,
    findim_certificate,
    id_chain,
    pd_chain,
    sample_sequences,
)
from .torsion import EXT1, HOM, induced_pairs, require_source, round_trip, tilting_check, transport

OK, ERROR, UNDECIDED = 0, 1, 2


class Outcome:
    def __init__(self, report: dict, code: int = OK, dot: str | None = None):
        self.report = report
        self.code = code
        self.dot = dot


# -- loading ------------------------------------------------------------------------------


def _budget(args) -> Budget:
    b = default_budget()
    if getattr(args, "cutoff", None) is not None:
        b = b.updated(pd_cutoff=args.cutoff)
    return b


def _algebra(args) -> Algebra:
    if not args.algebra:
        raise ParseError("this command needs --algebra", "--algebra")
    return io.parse_algebra(args.algebra)


def _module(args, path=None) -> Module:
    path = path or args.module
    if not path:
        raise ParseError("this command needs --module", "--module")
    A = io.parse_algebra(args.algebra) if getattr(args, "algebra", None) else None
    return io.parse_module(path, A)


def _universe(args, A: Algebra) -> list[Module]:
    U = enumerate_modules(A, args.max_length, _budget(args).universe_cap)
    return U.indecomposables() if args.universe == "indecomposable" else U.nonzero()


def _summary(M: Module) -> dict:
    return io.module_summary(M)


def _tilting_module(args) -> Module:
    if args.tilting:
        doc = json.loads(Path(args.tilting).read_text(encoding="utf-8"))
        base = Path(args.tilting).parent
        for key in ("algebra", "module"):
            if key not in doc:
                raise ParseError(f"tilting file needs {key!r}", args.tilting)
        A = io.parse_algebra(base / doc["algebra"])
        return io.parse_module(base / doc["module"], A)
    return _module(args)


# -- commands ---------------------------------------------------------------------------------


def cmd_algebra_validate(args) -> Outcome:
    A = io.parse_algebra(args.algebra, validate=False)
    rep = validate_algebra(A)
    out = {"algebra": A.name, "p": A.p, "dim": A.dim, "vertices": list(A.vertex_labels), **rep.to_dict()}
    return Outcome(out, OK if rep.ok else ERROR)


def cmd_module_structure(args) -> Outcome:
    M = _module(args)
    st = structure(M)
    out = {
        **_summary(M),
        "dim": M.dim,
        "length": st["length"],
        "radical_layers": [list(x) for x in M.radical_layers],
        "socle_layers": [list(x) for x in M.socle_layers],
        "top": list(st["top"].dim_vector),
        "radical": st["radical"].basis.tolist(),
        "socle": st["socle"].basis.tolist(),
        "summands": [X.loewy_label() for X in decompose(M)],
        "composition_series": io.filtration_to_dict(st["comp_series"]),
    }
    return Outcome(out)


def cmd_module_pd(args) -> Outcome:
    M = _module(args)
    b = _budget(args)
    v = proj_dim(M, b.pd_cutoff)
    out = {"module": _summary(M), "pd": v.to_dict(), "cutoff": b.pd_cutoff}
    if args.injective:
        out["id"] = inj_dim(M, b.pd_cutoff).to_dict()
    return Outcome(out, UNDECIDED if v.is_unknown else OK)


def cmd_subcat_member(args) -> Outcome:
    M = _module(args)
    C = io.parse_spec(args.cat, M.algebra, _budget(args))
    v = C.member(M)
    return Outcome({"cat": C.name, "module": _summary(M), **v.to_dict()}, UNDECIDED if v.value == UNKNOWN else OK)


def cmd_subcat_boundary(args) -> Outcome:
    M = _module(args)
    C = io.parse_spec(args.cat, M.algebra, _budget(args))
    v = boundary_member(C, M, args.side)
    return Outcome({"cat": C.name, "module": _summary(M), **v.to_dict()}, UNDECIDED if v.value == UNKNOWN else OK)


def cmd_subcat_enumerate(args) -> Outcome:
    A = _algebra(args)
    C = io.parse_spec(args.cat, A, _budget(args))
    mods = _universe(args, A)
    res = enumerate_boundary(C, args.side, mods)
    out = {
        "cat": C.name,
        "side": args.side,
        "max_length": args.max_length,
        "universe": args.universe,
        "universe_size": res.source_size,
        "members": [_summary(M) for M in res.members],
        "unknown": [_summary(M) for M in res.unknown],
    }
    return Outcome(out, UNDECIDED if res.unknown else OK)


def _dot(args, F):
    return io.filtration_dot(F) if args.dot else None


def cmd_filtration_build(args) -> Outcome:
    M = _module(args)
    C = io.parse_spec(args.cat, M.algebra, _budget(args))
    F = build_filtration(C, M) if args.kind == FILTRATION else build_cofiltration(C, M)
    return Outcome({"cat": C.name, **io.filtration_to_dict(F)}, dot=_dot(args, F))


def _load_filtration(args):
    if not args.filtration:
        raise ParseError("this command needs --filtration", "--filtration")
    M = _module(args)
    return M, io.parse_filtration(args.filtration, M)


def cmd_filtration_convert(args) -> Outcome:
    _, F = _load_filtration(args)
    G = convert(F)
    return Outcome(io.filtration_to_dict(G), dot=_dot(args, G))


def cmd_filtration_validate(args) -> Outcome:
    M, F = _load_filtration(args)
    problems = F.problems()
    out = {"kind": F.kind, "module": _summary(M), "length": F.length, "valid": not problems, "problems": problems}
    code = OK if not problems else ERROR
    if args.cat and not problems:
        C = io.parse_spec(args.cat, M.algebra, _budget(args))
        side = args.side or (OVER if F.kind == FILTRATION else UNDER)
        verdicts = certify_factors(C, F, side)
        out["cat"] = C.name
        out["side"] = side
        out["factors"] = [{**_summary(f.module), **v.to_dict()} for f, v in zip(F.factors, verdicts)]
        values = {v.value for v in verdicts}
        if "no" in values:
            code = ERROR
        elif UNKNOWN in values:
            code = UNDECIDED
    return Outcome(out, code, dot=_dot(args, F))


def cmd_findim_certify(args) -> Outcome:
    A = _algebra(args)
    cert = findim_certificate(_universe(args, A), args.n, _budget(args))
    code = OK if cert["inclusion_holds"] else (UNDECIDED if cert["undecided"] and not cert["violations"] else ERROR)
    return Outcome({"algebra": A.name, "universe": args.universe, **cert}, code)


def cmd_chain_check(args) -> Outcome:
    A = _algebra(args)
    b = _budget(args)
    chain = (pd_chain if args.chain == "pd" else id_chain)(b.level_cap, b)
    mods = _universe(args, A)
    seqs = sample_sequences(mods, b.closure_samples, b.seed, b.submodule_cap)
    m = args.m if args.m is not None else args.n + 1
    rep = chain_check(chain, seqs, mods, args.n, m)
    code = ERROR if not rep["axioms_hold"] else (UNDECIDED if rep["undecided_sequences"] else OK)
    return Outcome({"algebra": A.name, **rep}, code)


def cmd_tilting_check(args) -> Outcome:
    T = _tilting_module(args)
    rep = tilting_check(T)
    return Outcome({"module": _summary(T), **rep}, OK if rep.get("tilting") else ERROR)


def cmd_tilting_transport(args) -> Outcome:
    T = _tilting_module(args)
    if not args.target:
        raise ParseError("this command needs --target", "--target")
    M = io.parse_module(args.target, T.algebra)
    pairs = induced_pairs(T, _budget(args))
    require_source(pairs, args.functor, M, "target module")
    if args.functor == HOM:
        # an under(T)-filtration, read off a cofiltration since T(T) is not closed under kernels of epis
        F = convert(build_cofiltration(pairs.over_a.torsion_spec, M, check_closures=False))
    else:
        F = build_filtration(pairs.over_a.torsionfree_spec, M, check_closures=False)
    G = transport(pairs, args.functor, F)
    out = {
        "functor": args.functor,
        "tilting": _summary(T),
        "source": io.filtration_to_dict(F),
        "target": io.filtration_to_dict(G),
        "target_valid": G.is_valid(),
        "round_trip": round_trip(pairs, M),
    }
    ok = out["target_valid"] and out["round_trip"] and all(f.certificate.get("verdict") == "yes" for f in G.factors)
    return Outcome(out, OK if ok else ERROR, dot=_dot(args, G))


def _ordering(args, A: Algebra):
    if not args.ordering:
        return None
    labels = [x.strip() for x in args.ordering.split(",")]
    for x in labels:
        if x not in A.vertex_labels:
            raise ParseError(f"unknown vertex {x!r} in ordering", "--ordering")
    return [A.vertex_labels.index(x) for x in labels]


def cmd_strat_delta(args) -> Outcome:
    A = _algebra(args)
    fams = standard_modules(A, _ordering(args, A))
    out = {"algebra": A.name, "ordering": [A.vertex_labels[i] for i in fams[DELTA].ordering]}
    for kind in (DELTA, DELTA_STAR, NABLA, NABLA_STAR):
        out[kind] = [{"vertex": A.vertex_labels[k], **_summary(X)} for k, X in enumerate(fams[kind].members)]
    return Outcome(out)


def cmd_strat_check(args) -> Outcome:
    A = _algebra(args)
    fams = standard_modules(A, _ordering(args, A))
    mods = _universe(args, A)
    kinds = [args.family] if args.family else [DELTA, DELTA_STAR, NABLA, NABLA_STAR]
    checks = [theta_boundary_check(fams[k], mods, _budget(args)) for k in kinds]
    out = {"algebra": A.name, "max_length": args.max_length, "universe_size": len(mods), "checks": checks, "passes": all(c["passes"] for c in checks)}
    return Outcome(out, OK if out["passes"] else ERROR)


COMMANDS = {
    ("algebra", "validate"): cmd_algebra_validate,
    ("module", "structure"): cmd_module_structure,
    ("module", "pd"): cmd_module_pd,
    ("subcat", "member"): cmd_subcat_member,
    ("subcat", "boundary"): cmd_subcat_boundary,
    ("subcat", "enumerate"): cmd_subcat_enumerate,
    ("filtration", "build"): cmd_filtration_build,
    ("filtration", "convert"): cmd_filtration_convert,
    ("filtration", "validate"): cmd_filtration_validate,
    ("findim", "certify"): cmd_findim_certify,
    ("chain", "check"): cmd_chain_check,
    ("tilting", "check"): cmd_tilting_check,
    ("tilting", "transport"): cmd_tilting_transport,
    ("strat", "delta"): cmd_strat_delta,
    ("strat", "check"): cmd_strat_check,
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algebra")
    p.add_argument("--module")
    p.add_argument("--cat", default="all")
    p.add_argument("--side", choices=[UNDER, OVER])
    p.add_argument("--cutoff", type=int)
    p.add_argument("--max-length", type=int, default=4)
    p.add_argument("--universe", choices=["indecomposable", "all"], default="indecomposable")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--dot")
    p.add_argument("--json", action="store_true", help="JSON output (the default and only format)")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int)
    p.add_argument("--kind", choices=[FILTRATION, COFILTRATION], default=FILTRATION)
    p.add_argument("--filtration")
    p.add_argument("--injective", action="store_true")
    p.add_argument("--chain", choices=["pd", "id"], default="pd")
    p.add_argument("--tilting")
    p.add_argument("--target")
    p.add_argument("--functor", choices=[HOM, EXT1], default=HOM)
    p.add_argument("--ordering", help="comma separated vertex labels, smallest first")
    p.add_argument("--family", choices=[DELTA, DELTA_STAR, NABLA, NABLA_STAR])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="filtral", description="Filtrations by boundary classes of module subcategories.")
    groups = parser.add_subparsers(dest="group", required=True)
    subs: dict[str, argparse._SubParsersAction] = {}
    for group, action in COMMANDS:
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="action", required=True)
        _common(subs[group].add_parser(action))
    return parser


def run(argv: list[str]) -> tuple[int, str, str | None]:
    """Execute a command; returns (exit code, JSON text, DOT text)."""
    args = build_parser().parse_args(argv)
    set_threads(args.threads)
    if args.group == "subcat" and args.action == "boundary" and args.side is None:
        args.side = UNDER
    if args.group == "subcat" and args.action == "enumerate" and args.side is None:
        args.side = UNDER
    try:
        res = COMMANDS[(args.group, args.action)](args)
    except ValidationFailure as exc:
        res = Outcome({"error": {"code": exc.code, "message": str(exc), "report": exc.report.to_dict()}}, ERROR)
    except (MemberUnknown, CapExceeded, SearchCapExceeded) as exc:
        res = Outcome({"error": {"code": exc.code, "message": str(exc)}}, UNDECIDED)
    except FiltralError as exc:
        err = {"code": exc.code, "message": str(exc)}
        if isinstance(exc, ParseError) and exc.location:
            err["location"] = exc.location
        res = Outcome({"error": err}, ERROR)
    except (ValueError, OSError) as exc:
        res = Outcome({"error": {"code": "invalid_input", "message": str(exc)}}, ERROR)
    finally:
        set_threads(1)
    if res.dot is not None and args.dot:
        Path(args.dot).write_text(res.dot, encoding="utf-8")
    return res.code, io.dumps(res.report), res.dot


def main(argv: list[str] | None = None) -> int:
    code, text, _ = run(sys.argv[1:] if argv is None else argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
