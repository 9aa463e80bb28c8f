import csv
import io
import json
import subprocess
import sys

import pytest

from pureshapes.cli import main, parse_number


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_number():
    assert parse_number("1e12") == 10**12 and isinstance(parse_number("1e12"), int)
    assert parse_number("675") == 675


def test_shape_wild(capsys):
    code, out, _ = run(capsys, "shape", "--p", "3", "--m", "2", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert (d["type"], d["discriminant"], d["lambda_p"]) == ("wild", -108, ["2"])
    assert d["schema"] == "pure-shapes/1"


def test_shape_tame_text_and_csv(capsys):
    code, out, _ = run(capsys, "shape", "--p", "3", "--m", "10")
    assert code == 0 and "tame" in out and "-300" in out
    code, out, _ = run(capsys, "shape", "--p", "3", "--m", "10", "--format", "csv")
    rows = dict(r for r in csv.reader(io.StringIO(out)))
    assert rows["discriminant"] == "-300" and rows["type"] == "tame"


def test_shape_errors(capsys):
    code, _, err = run(capsys, "shape", "--p", "3", "--m", "8")
    assert code == 2 and "NotPPowerFree" in err
    with pytest.raises(SystemExit) as e:
        main(["shape", "--p", "4", "--m", "2"])
    assert e.value.code != 0


def test_census_two_windows(capsys, frozen):
    code, out, _ = run(capsys, "census", "--p", "3", "--x", "1e12", "--window", "1,2", "--window", "1,4", "--format", "json")
    d = json.loads(out)
    assert code == 0 and len(d["reports"]) == 2 and len(d["pairs"]) == 1
    assert d["reports"][0]["field_count_wild"] == frozen["census_p3_X1e12"]["1,2"]["field_count_wild"]
    assert d["pairs"][0]["mu_ratio"] == pytest.approx(0.5)


def test_census_tiny_bound(capsys):
    code, out, _ = run(capsys, "census", "--p", "3", "--x", "1", "--format", "json")
    r = json.loads(out)["reports"][0]
    assert code == 0
    assert [r[k] for k in ("tuple_count_wild", "tuple_count_tame", "field_count_wild", "field_count_tame")] == [0] * 4


def test_census_p5_window(capsys):
    code, out, _ = run(capsys, "census", "--p", "5", "--x", "1e10", "--window", "1,2,4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and rows[0]["window"] == "1,2,4"
    assert "\r\n" in out


def test_census_errors(capsys):
    code, _, err = run(capsys, "census", "--p", "3", "--x", "1e20")
    assert code == 2 and "InfeasibleBound" in err
    code, _, err = run(capsys, "census", "--p", "5", "--x", "1e6", "--window", "2,1,3")
    assert code == 2 and "InvalidWindow" in err


def test_json_is_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(["census", "--p", "5", "--x", "1e9", "--window", "1,2,4", "--format", "json", "-o", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--p", "3", "--y", "1e6")
    assert code == 0 and "2/(15√3)·∏δ_q" in out
    _, out, _ = run(capsys, "constants", "--p", "5", "--y", "1e6")
    assert "1/(225·5^(1/4))" in out and "1/(360·5^(3/4))" in out
    _, out, _ = run(capsys, "constants", "--p", "3", "--y", "2", "--format", "json")
    assert json.loads(out)["euler_product"] == 0.5


def test_verify_subprocess():
    for suite in ("determinants", "densities"):
        res = subprocess.run([sys.executable, "-m", "pureshapes", "verify", suite], capture_output=True, text=True)
        assert res.returncode == 0, res.stdout + res.stderr
        assert "FAIL" not in res.stdout
    res = subprocess.run([sys.executable, "-m", "pureshapes", "verify", "determinants"], capture_output=True, text=True)
    assert "h^- at p=23" in res.stdout


@pytest.mark.slow
def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
