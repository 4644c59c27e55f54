import json

import pytest

from constarm import cli


def run_cli(capsys, *args):
    code = cli.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_paper_table1(capsys):
    code, out, _ = run_cli(capsys, "table", "--paper-table1", "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0].startswith("q,m,r,ell")
    d_col = [int(r.split(",")[8]) for r in rows[1:]]
    assert d_col == [12, 6, 468, 273, 1020]


def test_table_block_mode(capsys):
    code, out, _ = run_cli(capsys, "table", "--q", "13", "--r", "3", "--block", "0",
                           "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert [int(r.split(",")[3]) for r in rows] == [48, 36, 24, 12]
    code, out, _ = run_cli(capsys, "table", "--q", "17", "--r", "4", "--block", "0",
                           "--format", "csv")
    assert [int(r.split(",")[3]) for r in out.strip().splitlines()[1:]] == [60, 44, 28, 12]


def test_table_q7_m2_r3(capsys):
    code, out, _ = run_cli(capsys, "table", "--q", "7", "--m", "2", "--r", "3",
                           "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [(r["ell"], r["d_exact"]) for r in rows] == [(2, 12), (5, 6), (8, 2)]
    # row count equals the number of admissible degrees
    from constarm import spaces

    assert len(rows) == len(spaces.admissible_degrees(7, 2, 3))


def test_table_r_auto(capsys):
    code, out, _ = run_cli(capsys, "table", "--q", "13", "--m", "2", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert sorted({r["r"] for r in rows}) == [3, 4, 6]


def test_witness_examples(capsys):
    code, out, _ = run_cli(capsys, "witness", "--q", "7", "--m", "2", "--r", "3",
                           "--ell", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["weight"] == 12 and payload["attains"] is True
    assert payload["d_exact"] == 12
    assert len(payload["word"]) == 16

    code, out, _ = run_cli(capsys, "witness", "--q", "13", "--m", "3", "--r", "3",
                           "--ell", "5", "--format", "json")
    payload = json.loads(out)
    assert payload["weight"] == 468 and payload["attains"] is True


def test_witness_terminal_rejected(capsys):
    code, out, err = run_cli(capsys, "witness", "--q", "7", "--m", "2", "--r", "3",
                             "--ell", "8")
    assert code == 1
    assert "support-search" in err


def test_verify_exhaustive(capsys):
    code, out, _ = run_cli(capsys, "verify", "--q", "7", "--m", "2", "--r", "3",
                           "--oracle", "exhaustive", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["all_pass"] is True
    oracle_checks = [c for c in rep["checks"] if c["check"] == "formula_vs_oracle"]
    assert sorted(c["oracle_d"] for c in oracle_checks) == [6, 12]


def test_verify_support_oracle(capsys):
    code, out, _ = run_cli(capsys, "verify", "--q", "7", "--m", "2", "--r", "3",
                           "--ell", "8", "--oracle", "support", "--wmax", "3",
                           "--format", "json")
    assert code == 0
    rep = json.loads(out)
    got = [c for c in rep["checks"] if c["check"] == "formula_vs_oracle"]
    assert got and got[0]["oracle_d"] == 2 and got[0]["oracle"] == "support-search"


def test_verify_deterministic_bytes(capsys):
    _, out1, _ = run_cli(capsys, "verify", "--seed", "42", "--format", "json")
    _, out2, _ = run_cli(capsys, "verify", "--seed", "42", "--format", "json")
    assert out1 == out2


def test_csv_schema_and_out_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run_cli(capsys, "table", "--q", "7", "--m", "2", "--r", "3",
                           "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().strip().splitlines()
    assert lines[0] == ("q,m,r,ell,a,b,n,k,d_exact,sdw_lower,sdw_upper,"
                        "kappa,oracle_d,oracle_method")


def test_bad_arguments(capsys):
    code, _, err = run_cli(capsys, "table")
    assert code == 2 and "error" in err
