import json

import pytest

from filtral import catalog, io
from filtral.errors import ParseError, ValidationFailure
from filtral.filtration import convert
from filtral.module import Module, is_isomorphic
from filtral.subcat import build_filtration


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj, indent=1))
    return path


def test_loop_fixture(fixtures_dir):
    A = io.parse_algebra(fixtures_dir / "loop.json")
    assert A.dim == 2 and A.p == 2


def test_empty_relations_plain_path_algebra(tmp_path):
    path = write(tmp_path, "a3.json", {
        "field": {"p": 3},
        "quiver": {"vertices": ["1", "2", "3"], "arrows": [{"name": "x", "from": "1", "to": "2"}, {"name": "y", "from": "2", "to": "3"}]},
        "relations": [],
    })
    assert io.parse_algebra(path).dim == 6


def test_unknown_arrow_names_arrow_and_location(tmp_path):
    text = (
        '{"field": {"p": 2},\n'
        ' "quiver": {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]},\n'
        ' "relations": [[{"coef": 1, "path": ["x", "zeta"]}]]}\n'
    )
    path = write(tmp_path, "bad.json", text)
    with pytest.raises(ParseError, match="zeta") as err:
        io.parse_algebra(path)
    line, col = err.value.location.rsplit(":", 2)[1:]
    assert int(line) == 3
    assert text.splitlines()[2][int(col) - 1:].startswith('"zeta"')


def test_syntax_error_location(tmp_path):
    path = write(tmp_path, "broken.json", '{"field": {"p": 2},\n  "quiver": [,]}')
    with pytest.raises(ParseError) as err:
        io.parse_algebra(path)
    assert err.value.location.endswith(":2:14")


def test_non_prime_field(tmp_path):
    path = write(tmp_path, "p4.json", {"field": {"p": 4}, "quiver": {"vertices": ["1"], "arrows": []}})
    with pytest.raises(ParseError, match="not prime"):
        io.parse_algebra(path)


def test_structure_constant_file(tmp_path, a2):
    d = io.algebra_to_dict(a2)
    sc = {"field": d["field"], "dim": a2.dim, "table": a2.struct.tolist(), "unit": a2.unit.tolist(), "idempotents": a2.idempotents.tolist()}
    path = write(tmp_path, "sc.json", sc)
    B = io.parse_algebra(path)
    assert B.dim == 3 and B.presentation is None


def test_broken_table_fails_validation(tmp_path):
    sc = {"field": {"p": 2}, "dim": 1, "table": [[[0]]], "unit": [1], "idempotents": [[1]]}
    with pytest.raises(ValidationFailure):
        io.parse_algebra(write(tmp_path, "bad_sc.json", sc))


def test_module_violating_relation(tmp_path, fixtures_dir):
    mod = {"algebra": str(fixtures_dir / "three.json"), "dims": {"3": 1}, "arrows": {"beta": [[1]]}}
    with pytest.raises(ValidationFailure):
        io.parse_module(write(tmp_path, "m.json", mod))


def test_module_wrong_matrix_shape(tmp_path, fixtures_dir):
    mod = {"algebra": str(fixtures_dir / "a2.json"), "dims": {"1": 1, "2": 1}, "arrows": {"a": [[1, 0]]}}
    with pytest.raises(ParseError, match="1x1"):
        io.parse_module(write(tmp_path, "m.json", mod))


def test_module_round_trip_idempotent(fixtures_dir, tmp_path):
    for path in sorted(fixtures_dir.glob("*/*.json")):
        if path.name == "tilting.json":
            continue
        M = io.parse_module(path)
        ref = json.loads(path.read_text())["algebra"]
        once = io.dumps(io.module_to_dict(M, ref))
        out = write(tmp_path, "rt.json", once)
        again = io.dumps(io.module_to_dict(io.parse_module(out, M.algebra), ref))
        assert once == again
        assert once + "\n" == path.read_text()


def test_fixture_modules_match_catalog(fixtures_dir, six, three):
    A = io.parse_algebra(fixtures_dir / "six.json")
    M = io.parse_module(fixtures_dir / "six" / "P1.json", A)
    assert M.loewy_label() == catalog.projective(six, "1").loewy_label()
    T = io.parse_module(fixtures_dir / "three" / "M.json")
    assert T.loewy_label() == "1 2 3/3 3"


def test_structure_constant_module(tmp_path, fixtures_dir):
    A = io.parse_algebra(fixtures_dir / "a2.json")
    M = io.parse_module(fixtures_dir / "a2" / "P1.json", A)
    d = {"algebra": str(fixtures_dir / "a2.json"), "dim": M.dim, "action": M.action.tolist()}
    N = io.parse_module(write(tmp_path, "sc.json", d))
    assert is_isomorphic(Module(A, N.action), M)


def test_filtration_round_trip_and_dot(fixtures_dir):
    M = io.parse_module(fixtures_dir / "six" / "P1.json")
    F = build_filtration(io.named_spec("pd-finite"), M)
    for G in (F, convert(F)):
        d = io.filtration_to_dict(G)
        H = io.filtration_from_dict(M, json.loads(io.dumps(d)))
        assert H.kind == G.kind and H.is_valid()
        assert [f.module.loewy_label() for f in H.factors] == [f.module.loewy_label() for f in G.factors]
    dot = io.filtration_dot(F)
    assert dot.startswith("digraph") and dot.count("->") == F.length
    assert '"1/4"' in dot


def test_named_specs():
    assert io.named_spec("pd-le-3").name == "pd-le-3"
    with pytest.raises(ParseError):
        io.named_spec("pd-lt-3")


def test_spec_config_file(tmp_path, fixtures_dir):
    cfg = {"predicate": {"kind": "pd_le", "n": 1}, "closures": {"extensions": "verify", "ker_epi": "verify"}, "budget": {"pd_cutoff": 6}}
    C = io.parse_spec(str(write(tmp_path, "c.json", cfg)))
    assert C.budget.pd_cutoff == 6
    cfg["predicate"] = {"kind": "torsion", "module": str(fixtures_dir / "a2" / "T.json")}
    C = io.parse_spec(str(write(tmp_path, "t.json", cfg)))
    S = io.parse_module(fixtures_dir / "a2" / "S1.json")
    assert C.member(S).yes
