import csv
import io
import json

import pytest

from opradius.cli import main
from opradius.verifier import replay


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_quantities(capsys, fixture_path):
    code, out, _ = run(capsys, "compute", fixture_path("J2"), "w", "--format", "json")
    assert code == 0 and abs(json.loads(out)["value"] - 0.5) <= 1e-9
    code, out, _ = run(capsys, "compute", fixture_path("D14"), "ell", "--format", "csv")
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert float(row["value"]) == pytest.approx(1.0)
    code, out, _ = run(capsys, "compute", fixture_path("J2"), "aluthge")
    assert json.loads(out)["data"] == [[0.0, 0.0]] * 4
    code, out, _ = run(capsys, "compute", fixture_path("H2"), "norm")
    assert out.startswith("norm = 3.000000")


def test_compute_writes_file(capsys, fixture_path, tmp_path):
    target = tmp_path / "w.json"
    assert main(["compute", fixture_path("N3"), "w", "--format", "json", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["value"] == pytest.approx(2.0)


def test_bounds_classical_and_product(capsys, fixture_path):
    code, out, _ = run(capsys, "bounds", fixture_path("J2"), "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 5 and all(r["holds"] == "true" for r in rows)
    code, out, _ = run(capsys, "bounds", fixture_path("J2"), "--set", "product", "--format", "json")
    evals = json.loads(out)
    first = next(e for e in evals if e["bound_id"] == "eq4.1")
    assert first["rhs_terms"][0] == pytest.approx(1.0)


def test_bounds_reject_noncommuting_s(capsys, fixture_path):
    code, _, err = run(capsys, "bounds", fixture_path("J2"), "--set", "product", "--s", fixture_path("H2"))
    assert code == 4 and "|T|S" in err


def test_block_bounds_fixture_slacks(capsys, fixture_path):
    code, out, _ = run(capsys, "block-bounds", fixture_path("J2_scalar"), "--format", "csv")
    rows = {r["bound"]: r for r in csv.DictReader(io.StringIO(out))}
    assert float(rows["eq1.6-aok"]["bound_value"]) == pytest.approx(0.5)
    assert float(rows["cor8"]["slack"]) == pytest.approx(-0.25)
    assert float(rows["eq4.6"]["slack"]) == pytest.approx(-0.25)
    code, out, _ = run(capsys, "block-bounds", fixture_path("H2_diag"), "--variant", "eq4.4", "--format", "json")
    assert json.loads(out)[0]["rhs_terms"][0] == pytest.approx(3.0)
    code, out, _ = run(capsys, "block-bounds", fixture_path("J2_scalar"), "--variant", "cor8", "--form", "both",
                       "--format", "json")
    assert [e["variant"] for e in json.loads(out)] == ["canonical", "as_printed"]


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--bound", "eq1.1", "--trials", "20")
    assert code == 0 and "violations=0" in out
    cx = tmp_path / "cx.json"
    rep = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "--bound", "eq1.5", "--variant", "as_printed", "--dim", "2",
                       "--scale", "3", "--seed", "7", "--trials", "50", "--out", str(rep),
                       "--counterexamples", str(cx))
    assert code == 1
    examples = json.loads(cx.read_text())
    assert examples and all(replay(c).ok for c in examples)
    assert json.loads(rep.read_text())["violations"] > 0
    code, _, _ = run(capsys, "verify", "--bound", "eq1.5", "--variant", "as_printed", "--dim", "1", "--scale", "0.3",
                     "--trials", "20")
    assert code == 0


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["verify", "--bound", "nope"], 2),
        (["verify"], 2),
        (["verify", "--bound", "eq4.1"], 4),
        (["verify", "--bound", "eq1.1", "--variant", "as_printed"], 2),
        (["compute", "/nonexistent.json", "w"], 2),
    ],
)
def test_error_exit_codes(capsys, argv, expected):
    assert main(argv) == expected
    assert capsys.readouterr().err.startswith("error:")


def test_bad_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["compute", str(bad), "w"]) == 2


def test_verify_compare(capsys):
    code, out, _ = run(capsys, "verify", "--bound", "cor8", "--ensemble", "block", "--grid", "2", "--dim", "2",
                       "--trials", "10", "--compare", "cor8,eq1.6-houdu,eq1.6-bk")
    verdicts = json.loads(out.strip().splitlines()[-1])["verdicts"]
    assert set(verdicts) == {"cor8 vs eq1.6-houdu", "cor8 vs eq1.6-bk"}


def test_sweep_outputs_csv(capsys, fixture_path):
    code, out, _ = run(capsys, "sweep", "--bound", "eq2.2", "--param", "alpha", "--from", "0", "--to", "1",
                       "--steps", "5", "--matrix", fixture_path("J2"), "--x", "[0, 1]", "--y", "[1, 0]")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 5
    assert all(float(r["value"]) == pytest.approx(1.0) for r in rows)
    code, out, _ = run(capsys, "sweep", "--bound", "eq3.1", "--param", "p", "--from", "2", "--to", "4",
                       "--steps", "3", "--ensemble", "psd", "--dim", "3", "--seed", "1")
    assert code == 0 and len(out.strip().splitlines()) == 4
    assert main(["sweep", "--bound", "eq1.1", "--param", "alpha", "--from", "0", "--to", "1"]) == 2


def test_range_outputs_boundary(capsys, fixture_path):
    code, out, _ = run(capsys, "range", fixture_path("J2"), "--points", "8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    assert all(abs(complex(float(r["re"]), float(r["im"]))) == pytest.approx(0.5) for r in rows)
