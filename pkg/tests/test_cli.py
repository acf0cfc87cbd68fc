import json

import pytest

from tsallis_ops import SCHEMA_VERSION, __version__
from tsallis_ops.cli import main
from tsallis_ops.serialize import case_to_dict, read_json, write_json
from tsallis_ops.theorems import make_case


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert capsys.readouterr().out.strip() == f"tsallis-ops {__version__} (schema {SCHEMA_VERSION})"


def test_eval_compare_fv(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "compare_fv", "--s", "0.1", "--t", "1", "--v", "0.5", "--format", "json")
    assert code == 0
    assert json.loads(out)["value"]["f"] == pytest.approx(1.01096, abs=1e-4)


def test_eval_domain_error(capsys):
    code, _, err = run(capsys, "eval", "--fn", "exp_v", "--x", "3", "--v", "-0.5")
    assert code == 2 and "1 + v*x" in err


def test_eval_matrix(tmp_path, capsys):
    write_json({"dim": 2, "data": [1, 0, 0, 2]}, tmp_path / "a.json")
    write_json({"dim": 2, "data": [2, 0, 0, 6]}, tmp_path / "b.json")
    code, out, _ = run(capsys, "eval", "--fn", "exp_entropy", "--A", str(tmp_path / "a.json"),
                       "--B", str(tmp_path / "b.json"), "--v", "0.5", "--format", "json")
    assert code == 0
    assert json.loads(out)["eigenvalues"] == pytest.approx([4.0, 12.5])


def test_eval_rejects_asymmetric(tmp_path, capsys):
    write_json({"dim": 2, "data": [1, 0.5, 0, 2]}, tmp_path / "a.json")
    code, _, err = run(capsys, "eval", "--fn", "relative_entropy", "--A", str(tmp_path / "a.json"),
                       "--B", str(tmp_path / "a.json"))
    assert code == 2 and "symmetric" in err


def test_gen_and_reuse(tmp_path, capsys):
    code, _, _ = run(capsys, "gen", "--kind", "ratio-k", "--dim", "3", "--v", "0.5", "--m", "1.2", "--M", "2",
                     "--out-dir", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a.json", "b.json", "c.json"]
    assert read_json(tmp_path / "a.json")["dim"] == 3


def test_gen_deterministic(capsys):
    _, first, _ = run(capsys, "gen", "--seed", "3")
    _, second, _ = run(capsys, "gen", "--seed", "3")
    assert first == second


def test_seed_from_environment(monkeypatch, capsys):
    _, explicit, _ = run(capsys, "gen", "--seed", "77")
    monkeypatch.setenv("TSALLIS_OPS_SEED", "77")
    _, from_env, _ = run(capsys, "gen")
    assert explicit == from_env


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "KNOWN_BOUNDS_S", "--dims", "2", "--trials", "3")
    assert code == 0 and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "--suite", "EXPV_OPERATOR", "--dims", "3", "--trials", "5",
                       "--v-grid", "0.3")
    assert code == 1 and out.rstrip().endswith("FAIL")
    code, _, err = run(capsys, "verify", "--suite", "NOPE")
    assert code == 2 and "unknown suites" in err


def test_verify_writes_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code, _, _ = run(capsys, "verify", "--suite", "CHORD_T", "--dims", "2,3", "--trials", "2",
                     "--v-grid", "0.5", "--format", "csv", "--out", str(out))
    assert code == 0
    assert len(out.read_text().splitlines()) == 3


def test_replay(tmp_path, capsys):
    ok = make_case("TANGENT_BOUNDS", 3, 0.5, 42, 0)
    write_json(case_to_dict(ok), tmp_path / "ok.json")
    assert run(capsys, "replay", str(tmp_path / "ok.json"))[0] == 0

    bad = make_case("FOUR_CHAIN_NEG", 3, -0.5, 42, 0)
    bad.id = "FOUR_CHAIN_POS"  # the chain reverses for v < 0
    d = case_to_dict(bad)
    write_json(d, tmp_path / "bad.json")
    code, out, _ = run(capsys, "verify", "--replay", str(tmp_path / "bad.json"), "--format", "json")
    assert code == 1 and json.loads(out)["overall_holds"] is False

    d["window"] = [d["window"][0] * 3, d["window"][1]]
    write_json(d, tmp_path / "forged.json")
    code, _, err = run(capsys, "replay", str(tmp_path / "forged.json"))
    assert code == 2 and "precondition" in err
