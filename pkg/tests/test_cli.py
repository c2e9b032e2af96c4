import json

import pytest

from solvint import cli


@pytest.fixture()
def spec_dir(tmp_path):
    (tmp_path / "s3.json").write_text(
        json.dumps({"kind": "sdp", "p": 3, "k": 1, "t": 1, "h_gens": [[[2]]], "name": "S3"})
    )
    (tmp_path / "f20.json").write_text(
        json.dumps({"kind": "sdp", "p": 5, "k": 1, "t": 1, "h_gens": [[[2]]], "name": "F20"})
    )
    (tmp_path / "tower2.json").write_text(json.dumps({"kind": "tower", "n": 2}))
    (tmp_path / "table.json").write_text(
        json.dumps({"kind": "oracle-table", "table": [[0, 1], [1, 0]], "name": "C2"})
    )
    (tmp_path / "badkind.json").write_text(json.dumps({"kind": "nope"}))
    (tmp_path / "notjson.json").write_text("{")
    (tmp_path / "reducible.json").write_text(
        json.dumps({"kind": "sdp", "p": 5, "k": 2, "t": 1, "h_gens": [[[2, 0], [0, 2]]]})
    )
    (tmp_path / "bigtower.json").write_text(json.dumps({"kind": "tower", "n": 4}))
    return tmp_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_s3(spec_dir, capsys):
    code, out, _ = run(capsys, "analyze", "--spec", str(spec_dir / "s3.json"))
    assert code == 0
    assert "count_table,n=6,c_n,1,oracle" in out
    assert "eta,index=6,product,6,oracle" in out
    assert "status,ok" in out


def test_analyze_f20_eta_certificate(spec_dir, capsys):
    code, out, _ = run(capsys, "analyze", "--spec", str(spec_dir / "f20.json"))
    assert code == 0
    assert "eta,index=20,product,25,oracle" in out
    assert "eta_min,group,eta_min_floor4,1.0744,oracle" in out


def test_analyze_tower_maximal_counts(spec_dir, capsys):
    code, out, _ = run(capsys, "analyze", "--spec", str(spec_dir / "tower2.json"))
    assert code == 0
    for needle in ("maximal_counts,n=2,m_n,1", "maximal_counts,n=3,m_n,3",
                   "maximal_counts,n=5,m_n,5"):
        assert needle in out


def test_analyze_oracle_table(spec_dir, capsys):
    code, out, _ = run(capsys, "analyze", "--spec", str(spec_dir / "table.json"))
    assert code == 0
    assert "group,C2,order,2,oracle" in out


def test_json_format_parses(spec_dir, capsys):
    code, out, _ = run(capsys, "analyze", "--spec", str(spec_dir / "s3.json"),
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "ok"
    assert payload["command"] == "analyze"
    assert any(r["section"] == "crown" for r in payload["records"])


def test_schema_error_exit_2(spec_dir, capsys):
    for name in ("badkind.json", "notjson.json"):
        code, _out, err = run(capsys, "analyze", "--spec", str(spec_dir / name))
        assert code == 2, err
    code, _out, err = run(capsys, "analyze", "--spec", str(spec_dir / "missing.json"))
    assert code == 2


def test_validation_error_exit_2(spec_dir, capsys):
    code, _out, err = run(capsys, "analyze", "--spec", str(spec_dir / "reducible.json"))
    assert code == 2
    assert "irreducibility" in err


def test_cap_error_exit_3(spec_dir, capsys):
    code, _out, err = run(capsys, "analyze", "--spec", str(spec_dir / "bigtower.json"),
                          "--cap-order", "1000")
    assert code == 3
    assert "cap" in err


def test_verify_tower_suite(spec_dir, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "tower",
                       "--spec", str(spec_dir / "tower2.json"))
    assert code == 0
    assert "tower,counts,formula_agrees_oracle,no,oracle" in out
    assert "structural classes equal oracle classes,pass,yes" in out


def test_verify_interkm_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--suite", "interKM", "--seed", "99")
    code2, out2, _ = run(capsys, "verify", "--suite", "interKM", "--seed", "99")
    assert code1 == code2 == 0
    assert out1 == out2
    code3, out3, _ = run(capsys, "verify", "--suite", "interKM", "--seed", "100")
    assert code3 == 0
    assert "seed,100" in out3


def test_counts_range(capsys):
    code, out, _ = run(capsys, "counts", "--range", "2..3", "--cap-order", "100")
    assert code == 0
    assert "counts,n=2,gamma_formula,7,formula" in out
    assert "counts,n=2,ratio_bound,1/1,formula" in out
    assert "counts,n=3,gamma_oracle,-" in out


def test_counts_strict_primes(capsys):
    code, out, _ = run(capsys, "counts", "--range", "2..3", "--strict-tower",
                       "--cap-order", "70")
    assert code == 0
    assert "counts,n=2,primes,3 13,formula" in out
    assert "counts,n=3,primes,3 13 193,formula" in out


def test_counts_bad_range(capsys):
    code, _out, err = run(capsys, "counts", "--range", "x..y")
    assert code == 2


def test_verify_due_with_spec(spec_dir, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "due",
                       "--spec", str(spec_dir / "f20.json"))
    assert code == 0
    assert "due,F20,gamma_v,1,oracle" in out
    code, _out, _err = run(capsys, "verify", "--suite", "due",
                           "--spec", str(spec_dir / "tower2.json"))
    assert code == 2


def test_verify_thuno_with_spec(spec_dir, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "thuno",
                       "--spec", str(spec_dir / "s3.json"))
    assert code == 0
    assert "thuno,S3,pass,yes,oracle" in out
