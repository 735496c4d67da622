"""End-to-end CLI behavior: commands, formats, exit codes, determinism."""

import json
import subprocess
import sys

from weyrlab.cli import main
from weyrlab.io_formats import dump_json, load_pencil, pencil_to_dict
from weyrlab.linalg import Matrix
from weyrlab.pencils import OperatorPencil


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_pencil(tmp_path, name, e_rows, a_rows):
    p = OperatorPencil.from_matrices(Matrix.from_rows(e_rows), Matrix.from_rows(a_rows))
    path = tmp_path / name
    path.write_text(dump_json(pencil_to_dict(p)) + "\n", encoding="utf-8")
    return str(path)


def test_gen_analyze_round_trip(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _, _ = run_cli(capsys, "gen", "--blocks", "2@1/1,1@inf", "--out", str(out))
    assert code == 0
    code, text, _ = run_cli(capsys, "analyze", "--pencil", str(out))
    assert code == 0
    data = json.loads(text)
    assert data["spectrum"]["finite"] == [{"multiplicity": 2, "value": "1"}]
    assert data["spectrum"]["has_infinity"] is True
    assert data["spectrum"]["infinity_multiplicity"] == 1
    tables = {t["at"]: t["indices"] for t in data["weyr_tables"]}
    assert tables["1"] == [1, 1]
    assert tables["inf"] == [1]


def test_gen_scrambled_round_trip_preserves_planted_structure(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _, _ = run_cli(
        capsys, "gen", "--blocks", "2@1/1,1@inf,1@1/2", "--seed", "11", "--out", str(out)
    )
    assert code == 0
    p = load_pencil(str(out))
    assert p.e_mat != Matrix.identity(4)  # actually scrambled
    code, text, _ = run_cli(capsys, "analyze", "--pencil", str(out))
    data = json.loads(text)
    assert {f["value"]: f["multiplicity"] for f in data["spectrum"]["finite"]} == {"1": 2, "1/2": 1}
    tables = {t["at"]: t["indices"] for t in data["weyr_tables"]}
    assert tables["1"] == [1, 1] and tables["inf"] == [1] and tables["1/2"] == [1]


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli(capsys, "gen", "--blocks", "3@0/1,2@inf", "--seed", "5", "--out", str(a))
    run_cli(capsys, "gen", "--blocks", "3@0/1,2@inf", "--seed", "5", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_analyze_markdown_and_points(tmp_path, capsys):
    path = write_pencil(tmp_path, "p.json", [[1, 0], [0, 1]], [[1, 0], [0, 2]])
    code, text, _ = run_cli(
        capsys, "analyze", "--pencil", path, "--points", "5,inf", "--format", "md"
    )
    assert code == 0
    assert "| eigenvalue | multiplicity |" in text
    assert "Weyr table at 5" in text
    assert "(empty: not an eigenvalue)" in text


def test_analyze_rejects_singular_pencil(tmp_path, capsys):
    path = write_pencil(tmp_path, "zero.json", [[0, 0], [0, 0]], [[0, 0], [0, 0]])
    code, _, err = run_cli(capsys, "analyze", "--pencil", path)
    assert code == 2
    assert "not regular" in err


def test_analyze_rejects_missing_and_malformed_files(tmp_path, capsys):
    code, _, err = run_cli(capsys, "analyze", "--pencil", str(tmp_path / "nope.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = run_cli(capsys, "analyze", "--pencil", str(bad))
    assert code == 2
    assert "JSON" in err
    nonsquare = tmp_path / "shape.json"
    nonsquare.write_text(json.dumps({"n": 2, "E": [["1"]], "A": [["1"]]}), encoding="utf-8")
    code, _, err = run_cli(capsys, "analyze", "--pencil", str(nonsquare))
    assert code == 2


def test_repr_check_identities_hold(tmp_path, capsys):
    path = write_pencil(tmp_path, "d.json", [[1, 0], [0, 1]], [[2, 0], [0, 3]])
    code, text, _ = run_cli(
        capsys, "repr-check", "--pencil", path, "--mu", "0", "--lambda", "1"
    )
    assert code == 0
    data = json.loads(text)
    assert data["all_equal"] is True
    assert set(data["verdicts"].values()) == {"equal"}


def test_repr_check_rejects_eigenvalue_mu(tmp_path, capsys):
    path = write_pencil(tmp_path, "d.json", [[1, 0], [0, 1]], [[2, 0], [0, 3]])
    code, _, err = run_cli(capsys, "repr-check", "--pencil", path, "--mu", "2", "--lambda", "1")
    assert code == 2
    assert "resolvent" in err


def test_repr_check_rejects_singular_pencil(tmp_path, capsys):
    path = write_pencil(tmp_path, "zero.json", [[0, 0], [0, 0]], [[0, 0], [0, 0]])
    code, _, _ = run_cli(capsys, "repr-check", "--pencil", path, "--mu", "0", "--lambda", "1")
    assert code == 2


def test_perturb_offside_worked_example(tmp_path, capsys):
    path = write_pencil(tmp_path, "zero.json", [[0, 0], [0, 0]], [[0, 0], [0, 0]])
    code, text, _ = run_cli(
        capsys,
        "perturb",
        "--pencil", path,
        "--type", "u",
        "--u", "1,0",
        "--vfunc", "1,0",
        "--wfunc", "0,1",
    )
    assert code == 0  # matching-side bound holds; off side is informational
    data = json.loads(text)
    assert data["matching_side"] == "kernel"
    assert data["range_side_distance"] == 2
    assert data["matching_side_distance"] <= 1
    assert data["matching_bound_holds"] is True
    assert data["weyr_delta"] is None  # zero pencil is not regular
    assert "not regular" in data["note"]


def test_perturb_regular_pencil_reports_deltas(tmp_path, capsys):
    path = write_pencil(tmp_path, "j.json", [[1, 0], [0, 1]], [[0, 1], [0, 0]])
    code, text, _ = run_cli(
        capsys,
        "perturb",
        "--pencil", path,
        "--type", "u",
        "--u", "1,0",
        "--vfunc", "0,0",
        "--wfunc", "1,0",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(text)
    delta = data["weyr_delta"]
    tables = {t["at"]: (t["base"]["indices"], t["perturbed"]["indices"]) for t in delta["tables"]}
    assert tables["0"] == ([1, 1], [1])
    assert delta["violations"] == []


def test_perturb_flag_validation(tmp_path, capsys):
    path = write_pencil(tmp_path, "j.json", [[1, 0], [0, 1]], [[0, 1], [0, 0]])
    code, _, err = run_cli(
        capsys, "perturb", "--pencil", path, "--type", "v", "--u", "1,0", "--vfunc", "1,0"
    )
    assert code == 2 and "--w" in err
    code, _, err = run_cli(
        capsys, "perturb", "--pencil", path, "--type", "u", "--u", "1,0",
        "--vfunc", "1,0", "--w", "1,0", "--wfunc", "1,0",
    )
    assert code == 2


def test_verify_small_suite_exits_zero(capsys):
    code, text, _ = run_cli(
        capsys, "verify", "--suite", "matching_distance", "--trials", "5", "--seed", "42"
    )
    assert code == 0
    data = json.loads(text)
    assert data["failed"] == 0 and data["trials"] == 5
    assert data["config"]["max_dim"] == 6 and data["config"]["entry_bound"] == 3


def test_verify_reports_are_byte_deterministic(capsys):
    argv = ["verify", "--suite", "perturbation_bounds", "--trials", "4", "--seed", "9",
            "--max-dim", "4"]
    code1, text1, _ = run_cli(capsys, *argv)
    code2, text2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    d1, d2 = json.loads(text1), json.loads(text2)
    d1.pop("elapsed_ms"), d2.pop("elapsed_ms")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_verify_unknown_suite_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "bogus", "--trials", "1", "--seed", "1")
    assert code == 2
    assert "unknown suite" in err


def test_verify_exit_code_one_on_violation(capsys, monkeypatch):
    import weyrlab.cli as cli_mod
    from weyrlab.perturbations import Failure, VerificationReport

    def fake_run(suite, config):
        return VerificationReport(
            suite=suite, seed=config.seed, config=config, trials=1, passed=0, failed=1,
            failures=(Failure(0, "weyr_index_delta", "0", 1, 0, 2, None, None),),
            elapsed_ms=1,
        )

    monkeypatch.setattr(cli_mod, "run_suite", fake_run)
    code, text, _ = run_cli(capsys, "verify", "--suite", "perturbation_bounds",
                            "--trials", "1", "--seed", "1", "--format", "md")
    assert code == 1
    assert "FAILURE trial 0" in text


def test_gen_rejects_malformed_blocks(tmp_path, capsys):
    code, _, err = run_cli(capsys, "gen", "--blocks", "2@", "--out", str(tmp_path / "x.json"))
    assert code == 2
    code, _, err = run_cli(capsys, "gen", "--blocks", "0@1/1", "--out", str(tmp_path / "x.json"))
    assert code == 2
    code, _, err = run_cli(capsys, "gen", "--blocks", "nope", "--out", str(tmp_path / "x.json"))
    assert code == 2


def test_usage_error_exit_code_via_subprocess(tmp_path):
    # argparse usage failures must exit 2 through the console entry point
    proc = subprocess.run(
        [sys.executable, "-m", "weyrlab.cli", "analyze"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    proc = subprocess.run(
        [sys.executable, "-m", "weyrlab.cli", "frobnicate"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2


def test_markdown_verify_output(capsys):
    code, text, _ = run_cli(
        capsys, "verify", "--suite", "singular_subspace", "--trials", "3", "--seed", "5",
        "--format", "md",
    )
    assert code == 0
    assert "# Verification suite: singular_subspace" in text
    assert "- failed: 0" in text
