import json
import shutil
from pathlib import Path


from kchaos.cli import main
from kchaos.report import validate

BATTERY = Path(__file__).resolve().parents[1] / "configs" / "battery.json"


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_cone_unit(capsys):
    code, out, _ = run(capsys, "cone-unit", "--h", "2,-1")
    assert code == 0
    assert json.loads(out)["results"][0]["result"]["m"] == [1, 1]


def test_cone_unit_absent(capsys):
    code, out, _ = run(capsys, "cone-unit", "--h", "1,1", "--bound", "10")
    res = json.loads(out)["results"][0]["result"]
    assert code == 0 and res["found"] is False and res["m"] is None


def test_bad_k_is_config_error(capsys):
    code, out, err = run(capsys, "sensitivity", "--k", "9")
    assert code == 1 and out == ""
    assert "k out of range 1..4" in err


def test_missing_config_file(capsys, tmp_path):
    code, _, err = run(capsys, "run", str(tmp_path / "none.json"))
    assert code == 1 and "cannot read config" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "run", str(bad))[0] == 1


def test_classify_pair_outputs(capsys, tmp_path):
    csv_path, figs = tmp_path / "p.csv", tmp_path / "figs"
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "classify-pair", "--pair", "periodic", "--window", "6",
                       "--out", str(out_path), "--profile-csv", str(csv_path),
                       "--figures", str(figs))
    assert code == 0 and out == ""
    report = json.loads(out_path.read_text())
    validate(report, "report")
    assert report["results"][0]["result"]["proximal"]["outcome"] == "no"
    lines = csv_path.read_text().splitlines()
    assert lines[1] == "n_1,n_2,distance_exp" and len(lines) == 2 + 36
    assert (figs / "profile-000.png").exists()
    # figures stay out of the report
    assert "png" not in out_path.read_text()


def test_induced_classify_pair(capsys):
    code, out, _ = run(capsys, "classify-pair", "--system", "induced-shift", "--h", "2,-1",
                       "--pair", "defect-origin")
    res = json.loads(out)["results"][0]["result"]
    assert code == 0 and res["li_yorke"]["outcome"] == "yes"


def test_sensitivity_rotation(capsys):
    code, out, _ = run(capsys, "sensitivity", "--system", "rotation")
    assert json.loads(out)["results"][0]["result"]["rule"] == "isometry"


def test_theorems_exit_zero(capsys):
    code, out, _ = run(capsys, "theorems", "--suite", "induced", "--h", "1,1")
    cases = json.loads(out)["results"][0]["result"]
    assert code == 0
    assert {c["status"] for c in cases} == {"inconclusive"}


def test_refuted_case_exits_two(capsys, monkeypatch):
    from kchaos import harness

    real = harness.dichotomy_suite

    def broken(cfg=None, k=1):
        cases = real(cfg, k)
        c = cases[0]
        return [harness.TheoremCase(c.theorem, c.statement, c.instance, c.hypotheses,
                                    c.conclusions, harness.REFUTED)] + cases[1:]

    monkeypatch.setattr(harness, "dichotomy_suite", broken)
    code, _, err = run(capsys, "theorems", "--suite", "dichotomy")
    assert code == 2 and "1 refuted" in err


def test_invariant_violation_exits_two(capsys, monkeypatch):
    from kchaos.analysis import InvariantViolation
    from kchaos import runner

    def boom(*a, **kw):
        raise InvariantViolation("forced")

    monkeypatch.setattr(runner, "sensitivity_check", boom)
    code, _, err = run(capsys, "sensitivity")
    assert code == 2 and "forced" in err


def test_threads_must_be_positive(capsys):
    assert run(capsys, "dichotomy", "--threads", "0")[0] == 1


def test_battery_is_deterministic_across_threads(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", str(BATTERY), "--threads", "1", "--out", str(a)]) == 0
    assert main(["run", str(BATTERY), "--threads", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["run", str(BATTERY), "--seed", "8", "--out", str(b)]) == 0
    assert json.loads(b.read_text())["seed"] == 8


def test_console_script_installed():
    assert shutil.which("kchaos") is not None
