import json

import pytest

from divflag.cli import run
from divflag.jsonio import (
    arrangement_from_json,
    arrangement_to_json,
    load_arrangement,
    verify_certificate,
)
from divflag.catalog import edelman_reiner_restriction
from divflag.exactalg import PrimeField, QQ
from divflag.arrangement import make_arrangement
from fractions import Fraction


def test_arrangement_json_roundtrip():
    arr = make_arrangement(QQ, 2, [[1, Fraction(1, 2)], [0, 1]])
    data = arrangement_to_json(arr)
    assert data["hyperplanes"][0] == [1, "1/2"]
    assert arrangement_from_json(data) == arr


def test_arrangement_json_prime_field():
    arr = make_arrangement(PrimeField(7), 2, [[3, 1], [0, 1]])
    data = arrangement_to_json(arr)
    assert data["field"] == {"Fp": 7}
    assert arrangement_from_json(data) == arr


def test_arrangement_json_errors_name_field():
    with pytest.raises(ValueError, match="hyperplanes"):
        arrangement_from_json({"field": "Q", "dim": 2})
    with pytest.raises(ValueError, match="field"):
        arrangement_from_json({"field": "R", "dim": 2, "hyperplanes": []})


def test_catalog_emit_roundtrip(tmp_path, capsys):
    out = tmp_path / "er.json"
    assert run(["catalog", "edelman-reiner", "--emit", str(out)]) == 0
    assert load_arrangement(str(out)) == edelman_reiner_restriction()
    report1 = tmp_path / "r1.json"
    report2 = tmp_path / "r2.json"
    assert run(["charpoly", str(out), "--json", str(report1)]) == 0
    assert run(["charpoly", "--catalog", "edelman-reiner", "--json", str(report2)]) == 0
    assert json.loads(report1.read_text()) == json.loads(report2.read_text())


def test_df_check_certificate_reverifies(tmp_path):
    arr_path = tmp_path / "er.json"
    cert_path = tmp_path / "cert.json"
    assert run(["catalog", "edelman-reiner", "--emit", str(arr_path)]) == 0
    assert run(["df-check", str(arr_path), "--certificate", str(cert_path)]) == 0
    assert run(["verify-cert", str(arr_path), str(cert_path)]) == 0
    # verification uses only the two files
    arr = load_arrangement(str(arr_path))
    cert = json.loads(cert_path.read_text())
    assert verify_certificate(arr, cert)


def test_df_check_refuted_exit_code(tmp_path):
    arr_path = tmp_path / "xyzw.json"
    assert run(["catalog", "xyzw", "--emit", str(arr_path)]) == 0
    assert run(["df-check", str(arr_path)]) == 2


def test_if_check_certificate_reverifies(tmp_path):
    arr_path = tmp_path / "wb3.json"
    cert_path = tmp_path / "cert.json"
    assert run(["catalog", "weyl-b", "--l", "3", "--emit", str(arr_path)]) == 0
    assert run(["if-check", str(arr_path), "--certificate", str(cert_path)]) == 0
    assert run(["verify-cert", str(arr_path), str(cert_path)]) == 0


def test_tampered_certificate_rejected(tmp_path):
    arr_path = tmp_path / "er.json"
    cert_path = tmp_path / "cert.json"
    run(["catalog", "edelman-reiner", "--emit", str(arr_path)])
    run(["df-check", str(arr_path), "--certificate", str(cert_path)])
    cert = json.loads(cert_path.read_text())
    cert["levels"][1]["charpoly"][0] += 1
    cert_path.write_text(json.dumps(cert))
    assert run(["verify-cert", str(arr_path), str(cert_path)]) == 2


def test_free3_exit_codes():
    assert run(["free3", "--catalog", "xyzw-restriction"]) == 2
    assert run(["free3", "--catalog", "boolean", "--l", "3"]) == 0


def test_oracle_verify_catalog():
    assert run(["oracle-verify", "--catalog", "boolean", "--l", "3"]) == 0


def test_oracle_verify_random_seeded():
    assert run(["oracle-verify", "--random", "5", "--seed", "11"]) == 0


def test_remainder_and_same_eq():
    assert run(["remainder", "--catalog", "xyzw", "--pivot", "3"]) == 0
    assert run(["same-eq", "--catalog", "xyzw", "--pivot", "3"]) == 0
    assert run(["ziegler", "--catalog", "edelman-reiner", "--pivot", "3"]) == 0


def test_hdf_check():
    assert run(["hdf-check", "--catalog", "boolean", "--l", "3"]) == 0
    assert run(["hdf-check", "--catalog", "xyzw"]) == 2


def test_usage_errors():
    assert run(["charpoly"]) == 1  # no input
    assert run(["charpoly", "/nonexistent/file.json"]) == 1
    assert run(["not-a-command"]) == 1


def test_malformed_json_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "Q", "dim": 2}')
    assert run(["charpoly", str(bad)]) == 1


def test_lattice_report(tmp_path):
    out = tmp_path / "lat.json"
    assert run(["lattice", "--catalog", "boolean", "--l", "3", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["level_sizes"] == [1, 3, 3, 1]
    assert report["chi"] == [-1, 3, -3, 1]
    assert len(report["flats"]) == 8


def test_threads_env(monkeypatch):
    monkeypatch.setenv("DIVFLAG_THREADS", "2")
    assert run(["charpoly", "--catalog", "boolean", "--l", "2"]) == 0
    monkeypatch.setenv("DIVFLAG_THREADS", "0")
    assert run(["charpoly", "--catalog", "boolean", "--l", "2"]) == 1
