import csv
import io
import json

import pytest

from heckesign.cli import CSV_COLUMNS, main, primes_between
from heckesign.qexpand import cyc_to_json, delta_table, form_to_json


@pytest.fixture
def registry(tmp_path):
    return str(tmp_path / "forms")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_form(path, t, label, edit=None):
    data = form_to_json(t)
    data["label"] = label
    if edit:
        edit(data)
    path.write_text(json.dumps(data))
    return str(path)


def test_primes_between():
    assert primes_between(2, 30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_between(90, 97) == [97]
    assert primes_between(0, 1) == []


def test_forms_list(capsys, registry):
    code, out, _ = run(capsys, "--registry", registry, "forms", "list")
    assert code == 0
    assert "1.12.a.a" in out and "11.2.a.a" in out


def test_ingest_and_list(capsys, registry, tmp_path):
    f = write_form(tmp_path / "d.json", delta_table(30), "my.delta")
    code, out, _ = run(capsys, "--registry", registry, "ingest", f)
    assert code == 0 and "my.delta" in out
    code, out, _ = run(capsys, "--registry", registry, "forms", "list")
    assert "my.delta" in out
    code, out, _ = run(capsys, "--registry", registry, "coeffs", "--form", "my.delta", "--prime", "2", "--n", "3")
    assert code == 0 and "-1472" in out


def test_ingest_rejects_corruption(capsys, registry, tmp_path):
    def corrupt(d):
        d["coefficients"][3] = cyc_to_json(0)
    f = write_form(tmp_path / "bad.json", delta_table(30), "bad", corrupt)
    code, _, err = run(capsys, "--registry", registry, "ingest", f)
    assert code == 2 and "ValidationError" in err

    (tmp_path / "junk.json").write_text("{not json")
    code, _, err = run(capsys, "--registry", registry, "ingest", str(tmp_path / "junk.json"))
    assert code == 2 and "ParseError" in err


def test_coeffs_lambda(capsys, registry):
    code, out, _ = run(capsys, "--registry", registry, "coeffs", "--form", "delta", "--prime", "2", "--j", "2", "--n", "2")
    assert code == 0
    assert "lambda_j=-3520" in out
    assert "2\t4\t987136" in out


def test_verify_delta(capsys, registry):
    code, out, _ = run(capsys, "--registry", registry, "verify", "--form", "delta", "--pmax", "13", "--j-max", "3",
                       "--order", "100")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 5


def test_verify_short_order(capsys, registry):
    code, _, _ = run(capsys, "--registry", registry, "verify", "--form", "delta", "--order", "2")
    assert code == 0


def test_verify_planted_corruption(capsys, registry, tmp_path):
    def corrupt(d):
        d["coefficients"][3] = cyc_to_json(0)  # a(4) = 0
    f = write_form(tmp_path / "bad.json", delta_table(200), "bad", corrupt)
    code, out, _ = run(capsys, "--registry", registry, "verify", "--form", f, "--pmax", "13", "--order", "100")
    assert code == 1
    assert "FAIL hecke-recurrence" in out
    assert "n=4" in out.split("FAIL table-eigenform")[1].splitlines()[0]


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_scan_delta_grid(capsys, registry):
    code, out, _ = run(capsys, "--registry", registry, "scan", "--form", "delta", "--pmax", "97", "--j", "1,2,3,4",
                       "--nmax", "100")
    assert code == 0
    assert out.splitlines()[0] == ",".join(CSV_COLUMNS)
    rows = _csv(out)
    assert len(rows) == 25 * 4
    assert all(int(r["change_count"]) >= 1 for r in rows)
    assert all(r["form"] == "1.12.a.a" for r in rows)


def test_scan_skips_level_primes(capsys, registry):
    code, out, err = run(capsys, "--registry", registry, "scan", "--form", "11.2.a.a", "--pmax", "13", "--nmax", "20")
    assert code == 0
    assert "p=11" in err and "p divides N" in err
    assert "11" not in [r["p"] for r in _csv(out)]


def test_scan_all_zero(capsys, registry, tmp_path):
    def zero(d):
        d["coefficients"] = [cyc_to_json(c) for c in (1, 0, 252, 0)]
    f = write_form(tmp_path / "z.json", delta_table(4), "zero.a2", zero)
    code, out, _ = run(capsys, "--registry", registry, "scan", "--form", f, "--pmax", "2", "--pattern", "odd",
                       "--nmax", "3")
    rows = _csv(out)
    assert code == 0
    assert rows[0]["first_change"] == "ALL_ZERO"


def test_scan_bad_j(capsys, registry):
    code, _, err = run(capsys, "--registry", registry, "scan", "--form", "delta", "--pattern", "odd", "--j", "2",
                       "--pmax", "3")
    assert code == 2 and "odd" in err


def test_scan_deterministic_and_formats_agree(capsys, registry, tmp_path):
    args = ["--registry", registry, "scan", "--form", "delta,11.2.a.a", "--pmax", "23", "--j", "1,3",
            "--pattern", "odd", "--nmax", "30"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    _, js, _ = run(capsys, *args, "--format", "json")
    from_json = [{k: str(v) for k, v in r.items()} for r in json.loads(js)]
    assert from_json == _csv(a)
    out = tmp_path / "o.csv"
    run(capsys, *args, "--out", str(out))
    assert out.read_text() == a


def test_scan_jobs_match_serial(capsys, registry):
    args = ["--registry", registry, "scan", "--form", "delta", "--pmax", "13", "--j", "1,2", "--nmax", "30"]
    _, serial, _ = run(capsys, *args)
    _, par, _ = run(capsys, *args, "--jobs", "2")
    assert serial == par


def test_scan_residue_classes(capsys, registry):
    code, out, _ = run(capsys, "--registry", registry, "scan", "--form", "5.4.a.a", "--pmin", "2", "--pmax", "3",
                       "--pattern", "class", "--m", "3", "--nmax", "30")
    rows = _csv(out)
    assert code == 0
    assert [(r["p"], r["l"], r["m"]) for r in rows] == [("2", "1", "3"), ("2", "2", "3"), ("3", "1", "3"), ("3", "2", "3")]


def test_char_poly_command(capsys, registry):
    code, out, _ = run(capsys, "--registry", registry, "theorem4", "--weight", "12", "--prime", "2", "--j", "0,1")
    assert code == 0
    assert "char_poly: X - 2" in out
    assert "char_poly: X + 24" in out
    assert "irreducible: Yes" in out and "eigen_sum_zero: No" in out


def test_real_zero_command(capsys, registry):
    code, out, _ = run(capsys, "--registry", registry, "theorem5", "--form", "delta", "--prime", "2", "--m", "2",
                       "--nmax", "20")
    assert code == 0
    assert "status: NoRealRoot" in out and "l=1:" in out
    code, out, _ = run(capsys, "--registry", registry, "theorem5", "--form", "delta", "--prime", "2")
    assert "status: NotApplicable" in out
    code, _, err = run(capsys, "--registry", registry, "theorem5", "--form", "11.2.a.a", "--prime", "11")
    assert code == 2 and "divides" in err


def test_unknown_form(capsys, registry):
    code, _, err = run(capsys, "--registry", registry, "coeffs", "--form", "nope", "--prime", "2")
    assert code == 2 and "unknown form" in err
