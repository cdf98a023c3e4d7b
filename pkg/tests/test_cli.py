from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from knotfloer.cli import CSV_COLUMNS, main
from knotfloer.complex import shift, single_label
from knotfloer.families import unknot_complex
from knotfloer.serialization import save_family


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for key, argv in {
        "trefoil": ["torus", "--p", "2", "--q", "3", "--genus", "1"],
        "t34": ["torus", "--p", "3", "--q", "4", "--genus", "3"],
        "unknot": ["unknot"],
        "qhs": ["unknot-in-qhs", "--p", "2", "--q", "1", "--boxes", "2"],
        "fig8": ["figure-eight", "--genus", "1"],
    }.items():
        path = tmp_path / f"{key}.json"
        assert run(capsys, "family", *argv, "-o", str(path))[0] == 0
        paths[key] = str(path)
    path = tmp_path / "dual.json"
    assert run(capsys, "dual", paths["trefoil"], "-o", str(path))[0] == 0
    paths["dual"] = str(path)
    return paths


def test_invariants_json_trefoil(files, capsys):
    code, out, _ = run(capsys, "invariants", files["trefoil"], "--format", "json")
    data = json.loads(out)
    row = data["labels"][0]
    assert code == 0
    assert (row["nu_plus_s"], row["r_s"], row["d_s"], row["tau"]) == ("1", "0", "0", "1")
    assert data["genus_bound"] == "1" and data["sharp"] is True
    assert row["V"] == {"-2": 2, "-1": 1, "0": 1, "1": 0, "2": 0}


def test_invariants_csv(files, capsys):
    code, out, _ = run(capsys, "invariants", files["unknot"], "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and tuple(rows[0].keys()) == CSV_COLUMNS
    assert {r["V"] for r in rows} == {"0", "1"}
    assert all(r["nu_plus_s"] == "0" and r["d_s"] == "0" for r in rows)
    code, out, _ = run(capsys, "invariants", files["unknot"], "--format", "csv", "--window", "0")
    assert [r["s"] for r in csv.DictReader(io.StringIO(out))] == ["0"]


def test_invariants_qhs_rows(files, capsys):
    code, out, _ = run(capsys, "invariants", files["qhs"], "--format", "json")
    data = json.loads(out)
    assert code == 0 and [r["nu_plus_s"] for r in data["labels"]] == ["0", "0"]
    assert data["totally_locally_trivial"] is True


def test_invariants_text(files, capsys):
    code, out, _ = run(capsys, "invariants", files["fig8"])
    assert code == 0 and "sharp=false" in out and "genus_bound=0" in out


def test_check_exit_codes(files, capsys, tmp_path):
    code, out, _ = run(capsys, "check", "v-subadd", files["trefoil"], files["dual"], "--format", "json")
    assert code == 0 and json.loads(out)["witness"]["strict"]["V_sum"] == 0
    code, out, _ = run(capsys, "check", "additivity", files["trefoil"])
    assert code == 0 and "not locally trivial" in out
    code, out, _ = run(capsys, "check", "genus-additivity", files["trefoil"], files["qhs"], "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["notes"]["certified_genus"] == "1" and data["notes"]["sum_is_sharp"]
    code, out, _ = run(capsys, "check", "tlt-symmetry", files["trefoil"])
    assert code == 0 and "inapplicable" in out
    code, _, _ = run(capsys, "check", "cabling", files["trefoil"], "--p", "2", "--q", "7")
    assert code == 0
    lopsided = tmp_path / "lopsided.json"
    save_family(single_label("lopsided", shift(unknot_complex(), 0, 1)), lopsided)
    code, out, _ = run(capsys, "check", "tlt-symmetry", str(lopsided), "--format", "csv")
    assert code == 1 and "violated" in out


def test_check_fuzz(capsys):
    code, out, _ = run(capsys, "check", "v-subadd", "--fuzz", "5", "--seed", "9", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "holds" and data["notes"]["runs"] == 5


def test_invalid_inputs_exit_2(files, capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"name": ')
    assert run(capsys, "invariants", str(broken))[0] == 2
    assert run(capsys, "invariants", str(tmp_path / "missing.json"))[0] == 2
    data = json.loads(open(files["trefoil"]).read())
    data["complexes"]["0"]["generators"][1]["m"] = "-2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 2 and "upower_not_integer" in out
    assert run(capsys, "invariants", str(bad))[0] == 2
    assert run(capsys, "check", "v-subadd", files["trefoil"])[0] == 2
    assert run(capsys, "check", "cabling", files["trefoil"])[0] == 2
    assert run(capsys, "family", "torus", "--p", "2")[0] == 2
    assert run(capsys, "family", "torus", "--p", "2", "--q", "4")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_validate_ok_and_tensor(files, capsys, tmp_path):
    assert run(capsys, "validate", files["trefoil"])[0] == 0
    out = tmp_path / "sum.json"
    assert run(capsys, "tensor", files["trefoil"], files["qhs"], "-o", str(out))[0] == 0
    assert run(capsys, "validate", str(out), "--format", "json")[0] == 0


def test_family_output_is_deterministic(capsys):
    a = run(capsys, "family", "random", "--seed", "4")[1]
    b = run(capsys, "family", "random", "--seed", "4")[1]
    assert a == b and json.loads(a)["name"] == "fuzz4"


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "knotfloer", "validate", files["unknot"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "valid" in proc.stdout
