from __future__ import annotations

import csv
import dataclasses
import io
import json

import pytest

from degenharm import identities as ids
from degenharm.cli import main
from degenharm.codec import parse_value


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_harmonic_table_csv(capsys):
    code, out, _ = run(capsys, "table", "harmonic", "--lambda", "1/2", "--nmax", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,value", "1,1", "2,5/4", "3,11/8"]


def test_symbolic_harmonic_first_row(capsys):
    code, out, _ = run(capsys, "table", "harmonic", "--lambda", "symbolic", "--nmax", "1", "--format", "csv")
    assert code == 0 and out.splitlines()[1] == "1,1"


def test_stirling2_at_lambda_one_is_identity(capsys):
    code, out, _ = run(capsys, "table", "stirling2", "--lambda", "1", "--nmax", "4", "--format", "csv")
    assert code == 0
    for n, k, v in list(csv.reader(io.StringIO(out)))[1:]:
        assert v == ("1" if n == k else "0")


@pytest.mark.parametrize(
    "family,extra",
    [
        ("harmonic", []),
        ("hyperharmonic", ["--r", "3"]),
        ("stirling1", []),
        ("stirling2", []),
        ("rstirling2", ["--r", "2"]),
        ("fubini", []),
        ("fubini-order", ["--alpha", "1-λ"]),
        ("hf", []),
        ("hfr", ["--r", "2"]),
    ],
)
def test_csv_and_json_tables_agree(capsys, family, extra):
    base = ["table", family, "--lambda", "symbolic", "--nmax", "4", *extra]
    _, csv_out, _ = run(capsys, *base, "--format", "csv")
    _, json_out, _ = run(capsys, *base, "--format", "json")
    rows = list(csv.reader(io.StringIO(csv_out)))[1:]
    doc = json.loads(json_out)
    assert doc["family"] == family and len(rows) == len(doc["rows"])
    for row, obj in zip(rows, doc["rows"]):
        if "coeffs" in obj:
            assert [parse_value(c) for c in row[2:]] == [parse_value(c) for c in obj["coeffs"]]
        else:
            assert parse_value(row[-1]) == parse_value(obj["value"])
    code, pretty, _ = run(capsys, *base)
    assert code == 0 and pretty


def test_classical_routes(capsys):
    code, out, _ = run(capsys, "table", "classical-harmonic", "--nmax", "4", "--format", "csv")
    assert code == 0 and out.splitlines()[-1] == "4,25/12"
    code, out, _ = run(capsys, "table", "fubini", "--lambda", "symbolic", "--eval-at-0", "--nmax", "3", "--format", "csv")
    assert out.splitlines()[-1] == "3,3,0,1,6,6"


def test_lambda_zero_rejected(capsys):
    code, _, err = run(capsys, "table", "harmonic", "--lambda", "0")
    assert code == 2 and "symbolic" in err
    code, _, _ = run(capsys, "expand", "hf", "--lambda", "0")
    assert code == 2
    code, _, _ = run(capsys, "table", "harmonic", "--lambda", "1/2", "--eval-at-0")
    assert code == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()
    assert run(capsys, "expand", "harmonic", "--order", "41")[0] == 2
    assert run(capsys, "expand", "hf", "--x", "abc")[0] == 2
    assert run(capsys, "table", "hfr", "--r", "0")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "THM1", "--all")[0] == 2
    assert run(capsys, "verify", "THM1", "--nmax", "30")[0] == 2


def test_expand_examples(capsys):
    _, out, _ = run(capsys, "expand", "harmonic", "--lambda", "1", "--order", "4")
    assert out.splitlines()[0] == "t + t^2 + t^3 + t^4 + O(t^5)"
    _, out, _ = run(capsys, "expand", "deg-log", "--lambda", "symbolic", "--order", "2")
    assert out.splitlines()[0] == "t + (-1 + λ)/2 t^2 + O(t^3)"
    _, out, _ = run(capsys, "expand", "hf", "--x", "1", "--lambda", "1/2", "--order", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["coeffs"] == ["0", "1", "3/2"] and doc["egf"] == ["0", "1", "3"]
    assert doc["varname"] == "t" and doc["order"] == 2


@pytest.mark.parametrize("name", ["deg-log", "deg-exp", "harmonic", "hyperharmonic", "hf", "hfr", "fubini", "fubini-order"])
def test_every_expansion_runs(capsys, name):
    code, out, _ = run(capsys, "expand", name, "--lambda", "2/5", "--order", "5", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 7


def test_out_file(tmp_path, capsys):
    target = tmp_path / "h.csv"
    assert main(["table", "harmonic", "--lambda", "1/2", "--nmax", "2", "--format", "csv", "--out", str(target)]) == 0
    assert target.read_text().splitlines() == ["n,value", "1,1", "2,5/4"]


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "THM7", "--nmax", "8")
    assert code == 0 and "THM7" in out
    code, out, _ = run(capsys, "verify", "THM2_PRINTED", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["known_misprint"] > 0
    code, out, _ = run(capsys, "verify", "--all", "--lambda", "1/2", "--nmax", "6")
    assert code == 0 and "unexpected 0" in out


def test_verify_point_replay(capsys):
    point = json.dumps({"lambda": "symbolic", "n": 2})
    code, out, _ = run(capsys, "verify", "THM2_PRINTED", "--point", point, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "FAIL" and doc["detail"]["right"] == "3 - λ"
    assert run(capsys, "verify", "THM2_PRINTED", "--point", "{bad")[0] == 2


def test_unexpected_failure_exit_and_replay_hint(capsys, monkeypatch):
    spec = ids.get_identity("THM7")

    def broken(point):
        raise ids._Mismatch({"component": "forced", "index": 0, "left": "1", "right": "2"})

    monkeypatch.setitem(ids._BY_ID, "THM7", dataclasses.replace(spec, evaluate=broken))
    code, _, err = run(capsys, "verify", "THM7", "--nmax", "2", "--lambda", "1/2")
    assert code == 1
    assert "degenharm verify THM7 --point" in err
    code, _, _ = run(capsys, "verify", "THM7", "--point", '{"lambda": "1/2", "n": 1}')
    assert code == 1


def test_verify_json_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--all", "--nmax", "4", "--lambda", "1/2,symbolic", "--format", "json"]
    assert main([*args, "--out", str(a)]) == 0
    assert main([*args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
