import json

import jsonschema
import pytest

from mopkit.cli import main
from mopkit.formats import APERY_SCHEMA, POLY_SCHEMA, poly_from_json
from mopkit.numerics import Polynomial
from mopkit.zeros import read_csv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_type2_text(capsys):
    code, out, _ = run(capsys, "type2", "--preset", "lebesgue", "--index", "2")
    assert code == 0
    assert out.splitlines()[-1] == "x^2 - x + 1/6"
    assert "# tool: mopkit" in out


def test_type2_json_validates(capsys):
    code, out, _ = run(capsys, "type2", "--preset", "apery-pair", "--index", "2,1",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0
    jsonschema.validate(data["poly"], POLY_SCHEMA)
    assert data["metadata"]["domain"] == "rational"
    assert all(r == "0" for r in data["residuals"])


def test_float_domain(capsys):
    code, out, _ = run(capsys, "type1", "--preset", "apery-pair", "--index", "2,2",
                       "--domain", "real:128", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["metadata"]["precision"] == 128
    assert abs(float(data["normalization_value"]) - 1) < 1e-30


def test_output_is_deterministic(capsys):
    args = ("apery", "--n", "4", "--format", "json")
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]
    jsonschema.validate(json.loads(first), APERY_SCHEMA)


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "type2", "--preset", "lebesgue")[0] == 2
    assert run(capsys, "type2", "--preset", "nope", "--index", "1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    path = tmp_path / "dup.json"
    path.write_text(json.dumps([{"kind": "lebesgue_unit"}, {"kind": "lebesgue_unit"}]))
    code, _, err = run(capsys, "type2", "--measures", str(path), "--index", "1,1")
    assert code == 1 and "NonNormalIndex" in err


def test_perfect_and_normal(capsys):
    code, out, _ = run(capsys, "perfect", "--preset", "apery-pair", "--max", "3")
    assert code == 0 and out.splitlines()[-1].endswith("none")
    code, out, _ = run(capsys, "normal", "--preset", "lebesgue", "--index", "3")
    assert out.splitlines()[-1] == "(3) normal: True"


def test_mixed_spec_file(capsys, tmp_path):
    spec = {"degrees": {"A": 1, "B": 1},
            "forms": [{"terms": [["1", 0, "A"], ["-1", 1, "B"]], "order": 1},
                      {"terms": [["1", 1, "A"], ["-2", 2, "B"]], "order": 1}],
            "point_constraints": [["A", "1", "0"]], "nonzero": ["A"]}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run(capsys, "mixed", "--preset", "apery-triple", "--spec", str(path),
                       "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert poly_from_json(data["unknowns"]["A"]) == Polynomial([-4, 4])


def test_series_commands(capsys):
    code, out, _ = run(capsys, "pade", "--preset", "lebesgue", "--index", "2", "--terms", "10")
    assert code == 0 and "P = x^2 - x + 1/6" in out
    code, out, _ = run(capsys, "hp-type1", "--preset", "apery-pair", "--index", "1,1",
                       "--terms", "10")
    assert code == 0 and "A1 = 4" in out
    code, out, _ = run(capsys, "series-alg", "--terms", "4", "--domain", "complex:128")
    assert code == 0 and out.count("c_") == 4


def test_kernel_and_recurrence(capsys):
    code, out, _ = run(capsys, "kernel-check", "--preset", "apery-pair", "--index", "2,1",
                       "--points", "1/3,1/2")
    assert code == 0 and "structural deviation = 0" in out
    code, out, _ = run(capsys, "nnrec", "--preset", "lebesgue", "--index", "1",
                       "--format", "json")
    data = json.loads(out)
    assert data["b"] == ["1/2"] and data["a"] == [["1/12"]] and data["exact"]


def test_zeros_from_poly_file(capsys, tmp_path):
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"domain": "rational", "coeffs": ["1/6", "-1", "1"]}))
    code, out, _ = run(capsys, "zeros", "--poly", str(poly), "--format", "text")
    assert code == 0 and "P: 2 zeros" in out
    assert run(capsys, "zeros", "--poly", str(poly), "--format", "csv")[0] == 2


@pytest.mark.parametrize("fmt", ["csv", "svg"])
def test_fig1_writes_files(capsys, tmp_path, fmt):
    out = tmp_path / f"fig1.{fmt}"
    png = tmp_path / "fig1.png"
    code, _, _ = run(capsys, "fig1", "--index", "4,4", "--domain", "complex:256",
                     "--format", fmt, "--out", str(out), "--plot", str(png))
    assert code == 0
    meta = json.loads((tmp_path / f"fig1.{fmt}.meta.json").read_text())
    assert meta["index"] == [4, 4] and meta["order_of_contact"] >= 8
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    if fmt == "csv":
        rows = read_csv(out, 256)
        assert len(rows) == 3 + 3 + 5
    else:
        assert out.read_text().rstrip().endswith("</svg>")
