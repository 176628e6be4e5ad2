import json
import subprocess
import sys

import pytest

from threeorbit.cli import main, parse_rows, report_bytes, run

U1_ROWS = "1 0 1 0; 0 2 1 2"


def cli(*argv, capsys):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_rows():
    assert parse_rows("1 0 1 0; 0,2,1,2") == [[1, 0, 1, 0], [0, 2, 1, 2]]
    assert parse_rows("") == []


def test_construct_extraspecial(tmp_path, capsys):
    path = tmp_path / "e9.json"
    code, out, _ = cli("construct", "extraspecial_q", "--q", "9", "--m", "1", "--out", str(path), capsys=capsys)
    assert code == 0
    obj = json.loads(path.read_text())
    assert (obj["p"], obj["n"], obj["m"]) == (3, 4, 2)
    assert json.loads(out)["result"]["order"] == 729


def test_construct_p_epsilon(tmp_path, capsys):
    code, out, _ = cli("construct", "p_epsilon", "--out", str(tmp_path / "pe.json"), capsys=capsys)
    assert code == 0 and json.loads(out)["result"]["order"] == 512


def test_row_8_instance_from_files(tmp_path, capsys):
    parent, child = tmp_path / "h81.json", tmp_path / "u1.json"
    assert cli("construct", "heisenberg_q", "--q", "81", "--out", str(parent), capsys=capsys)[0] == 0
    code, out, _ = cli("construct", "central_quotient", "--parent", str(parent), "--u", U1_ROWS,
                       "--out", str(child), capsys=capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["order"] == 3 ** 10 and res["center_order"] == 9
    code, out, _ = cli("check3", "--group", str(child), capsys=capsys)
    assert code == 0 and json.loads(out)["result"]["is3"] is True


def test_check3_exit_codes(tmp_path, capsys):
    assert cli("check3", "extraspecial_q", "--q", "3", "--m", "1", capsys=capsys)[0] == 0
    d4 = tmp_path / "d4.json"
    cli("construct", "dihedral", "--k", "4", "--out", str(d4), capsys=capsys)
    assert cli("check3", "--group", str(d4), "--strategy", "oracle", capsys=capsys)[0] == 3
    code, out, err = cli("check3", "pres_3_10", "--strategy", "oracle", capsys=capsys)
    assert code == 4 and "TooLarge" in json.loads(out)["result"]["reason"] and "TooLarge" in err
    assert cli("check3", "p_epsilon", capsys=capsys)[0] == 4
    assert cli("check3", "p_epsilon", "--strategy", "search", capsys=capsys)[0] == 0


def test_usage_errors_are_json(capsys):
    for argv in (["scan", "--q", "10", "--dim", "1"], ["construct", "extraspecial_q", "--q", "4"],
                 ["bogus"], ["check3"], ["construct", "suzuki_A", "--p", "2"]):
        code, _, err = cli(*argv, capsys=capsys)
        assert code == 2, argv
        assert "reason" in json.loads(err.strip().splitlines()[-1])


def test_scan_examples(capsys):
    code, out, _ = cli("scan", "--q", "81", "--dim", "2", capsys=capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["total"] == 130 and [1, 0, 1, 0] in res["witnesses"][0] + sum(res["witnesses"], [])
    assert [[1, 0, 1, 0], [0, 1, 2, 1]] in res["witnesses"]  # U1 in echelon form
    res3 = json.loads(cli("scan", "--q", "81", "--dim", "3", capsys=capsys)[1])["result"]
    assert res3["cells"]["both"] == 40
    res9 = json.loads(cli("scan", "--q", "9", "--dim", "1", capsys=capsys)[1])["result"]
    assert res9["witness_count"] == 0


def test_scan_csv(capsys):
    code, out, _ = cli("scan", "--q", "81", "--dim", "2", "--format", "csv", capsys=capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "basis,hyperplane,transitive,cell" and len(lines) == 131


def test_misc_commands(tmp_path, capsys):
    a4 = tmp_path / "a4.json"
    cli("construct", "pq_frobenius", "--p", "2", "--q", "3", "--out", str(a4), capsys=capsys)
    code, out, _ = cli("rank", "--group", str(a4), capsys=capsys)
    assert code == 0 and json.loads(out)["result"]["rank"] == 3
    e9, quo = tmp_path / "e9.json", tmp_path / "q.json"
    cli("construct", "extraspecial_q", "--q", "9", "--out", str(e9), capsys=capsys)
    cli("construct", "central_quotient", "--parent", str(e9), "--u", "1 2", "--out", str(quo), capsys=capsys)
    code, out, _ = cli("standardize", "--group", str(quo), capsys=capsys)
    assert code == 0 and json.loads(out)["result"]["verdict"] == "isomorphic to 3^{1+4}_+"
    code, out, _ = cli("lambda2", "--p", "3", "--n", "4", capsys=capsys)
    assert code == 0 and json.loads(out)["result"]["multiplicity_free"] is True
    code, out, _ = cli("orbits", "su3_sylow", "--q", "4", capsys=capsys)
    assert code == 0 and json.loads(out)["result"]["r"] == 3


def test_reports_are_byte_stable():
    argv = ["scan", "--q", "81", "--dim", "2"]
    assert report_bytes(argv) == report_bytes(argv) == report_bytes(argv + ["--jobs", "2"])
    argv = ["check3", "heisenberg_q", "--q", "9"]
    assert report_bytes(argv) == report_bytes(argv)
    assert report_bytes(argv) == report_bytes(argv + ["--seed", "0"])


def test_report_fields():
    report, code = run(["lambda2", "--p", "5", "--n", "3"])
    assert set(report) == {"command", "parameters", "result", "version", "input_digest"}
    assert "timing" not in json.dumps(report)


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "threeorbit.cli", "lambda2", "--p", "3", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["multiplicity_free"] is True
    assert "elapsed" in proc.stderr


@pytest.mark.slow
def test_example55_command(capsys):
    code, out, _ = cli("example55", capsys=capsys)
    res = json.loads(out)["result"]
    assert res["structure_ok"] is True and res["dual_scalar"] == 2
    assert code == 3  # the subspace contains a subfield hyperplane
