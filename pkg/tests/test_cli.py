import json
import subprocess
import sys

import pytest

from filtral.cli import COMMANDS, run

SEVEN = {"1/4", "2/5", "3/6", "1/2/3", "4/5/6", "5/5 6", "6/6"}


def call(*argv):
    code, text, _ = run([str(a) for a in argv])
    return code, json.loads(text)


def test_fifteen_commands():
    assert len(COMMANDS) == 15


def test_filtration_build_six(fixtures_dir, tmp_path):
    dot = tmp_path / "chain.dot"
    code, rep = call("filtration", "build", "--cat", "pd-finite", "--module", fixtures_dir / "six" / "P1.json", "--dot", dot)
    assert code == 0
    labels = [f["iso_label"] for f in rep["factors"]]
    assert set(labels) <= SEVEN
    assert all(f["certificate"]["verdict"] == "yes" for f in rep["factors"])
    assert dot.read_text().count("->") == len(labels)


def test_boundary_of_simple(fixtures_dir):
    code, rep = call("subcat", "boundary", "--cat", "all", "--module", fixtures_dir / "a2" / "S2.json", "--side", "under")
    assert code == 0 and rep["verdict"] == "yes"


def test_findim_certify_three(fixtures_dir):
    code, rep = call("findim", "certify", "--algebra", fixtures_dir / "three.json", "--n", 1, "--max-length", 4)
    assert code == 0
    assert rep["certified_bound"] == 1 and rep["inclusion_holds"]


def test_unknown_exit_code(fixtures_dir):
    code, rep = call("module", "pd", "--module", fixtures_dir / "loop" / "S.json", "--cutoff", 0)
    assert code == 2 and rep["pd"]["kind"] == "unknown"


def test_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"p": 2}, "quiver": {"vertices": ["1"], "arrows": []},\n "relations": [[{"coef": 1, "path": ["q"]}]]}')
    code, rep = call("algebra", "validate", "--algebra", bad)
    assert code == 1
    assert rep["error"]["code"] == "parse_error" and "'q'" in rep["error"]["message"]
    assert rep["error"]["location"].endswith(":2:38")


def test_missing_flag(fixtures_dir):
    code, rep = call("module", "pd")
    assert code == 1 and rep["error"]["code"] == "parse_error"


def test_convert_and_validate(fixtures_dir, tmp_path):
    mod = fixtures_dir / "three" / "M.json"
    _, built = call("filtration", "build", "--cat", "pd-finite", "--module", mod)
    f = tmp_path / "f.json"
    f.write_text(json.dumps(built))
    code, conv = call("filtration", "convert", "--module", mod, "--filtration", f)
    assert code == 0 and conv["kind"] == "cofiltration"
    g = tmp_path / "g.json"
    g.write_text(json.dumps(conv))
    code, val = call("filtration", "validate", "--module", mod, "--filtration", g, "--cat", "pd-finite")
    assert code == 0 and val["valid"]
    assert sorted(x["iso_label"] for x in val["factors"]) == sorted(x["iso_label"] for x in built["factors"])


def test_invalid_chain_reported(fixtures_dir, tmp_path):
    mod = fixtures_dir / "a2" / "P1.json"
    f = tmp_path / "f.json"
    # the span of e1 is not a submodule of P1
    f.write_text(json.dumps({"kind": "filtration", "chain": [[], [[1, 0]], [[1, 0], [0, 1]]]}))
    code, rep = call("filtration", "validate", "--module", mod, "--filtration", f)
    assert code == 1


def test_tilting_commands(fixtures_dir):
    til = fixtures_dir / "a2" / "tilting.json"
    code, rep = call("tilting", "check", "--tilting", til)
    assert code == 0 and rep["tilting"]
    code, rep = call("tilting", "transport", "--tilting", til, "--target", fixtures_dir / "a2" / "P1.json")
    assert code == 0 and rep["target_valid"] and rep["round_trip"]
    code, rep = call("tilting", "transport", "--tilting", til, "--target", fixtures_dir / "a2" / "P1.json", "--functor", "ext1")
    assert code == 1 and rep["error"]["code"] == "source_class_violation"


def test_strat_commands(fixtures_dir):
    code, rep = call("strat", "delta", "--algebra", fixtures_dir / "a2.json", "--ordering", "2,1")
    assert code == 0
    assert [d["iso_label"] for d in rep["delta"]] == ["1/2", "2"]
    code, rep = call("strat", "check", "--algebra", fixtures_dir / "a2.json", "--max-length", 3)
    assert code == 0 and rep["passes"]


def test_chain_and_structure(fixtures_dir):
    code, rep = call("chain", "check", "--algebra", fixtures_dir / "three.json", "--max-length", 3)
    assert code == 0 and rep["axioms_hold"]
    code, rep = call("module", "structure", "--module", fixtures_dir / "three" / "M.json")
    assert code == 0 and rep["length"] == 5 and rep["summands"] == ["1 2 3/3 3"]


def test_enumerate_member(fixtures_dir):
    code, rep = call("subcat", "enumerate", "--cat", "pd-finite", "--algebra", fixtures_dir / "loop.json", "--max-length", 2, "--universe", "all")
    assert code == 0 and [m["iso_label"] for m in rep["members"]] == ["1/1"]
    code, rep = call("subcat", "member", "--cat", "pd-le-0", "--module", fixtures_dir / "loop" / "P.json")
    assert code == 0 and rep["verdict"] == "yes"


@pytest.mark.parametrize(
    "argv",
    [
        ["subcat", "enumerate", "--cat", "pd-finite", "--algebra", "three.json", "--max-length", "4", "--side", "over"],
        ["findim", "certify", "--algebra", "three.json", "--max-length", "4"],
        ["strat", "check", "--algebra", "a2.json", "--max-length", "4"],
    ],
)
def test_thread_count_does_not_change_output(argv, fixtures_dir):
    argv = [str(fixtures_dir / a) if a.endswith(".json") else a for a in argv]
    one = run(argv + ["--threads", "1"])
    eight = run(argv + ["--threads", "8"])
    assert one[1] == eight[1] and one[0] == eight[0]


def test_console_entry_point(fixtures_dir):
    out = subprocess.run(
        [sys.executable, "-m", "filtral.cli", "algebra", "validate", "--algebra", str(fixtures_dir / "six.json")],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["valid"]
