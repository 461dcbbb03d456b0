import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from modmat import cli
from modmat.report import VerificationReport


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


def test_verify_all_passes(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--n", "10", "--qprec", "25", "--checks", "all", "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["status"] == "pass"
    assert {r["check"] for r in data["reports"]} >= {"ST", "RR", "MAIN", "BK", "AK1", "collinearity"}
    assert all(r["status"] == "pass" for r in data["reports"])


def test_cusp_command(capsys):
    code, cap = run(["cusp", "--n", "12", "--a", "5"], capsys)
    assert code == 0
    data = json.loads(cap.out)
    assert data["configuration"]["field"] == "cyclotomic:12"
    assert data["realization"]["is_realization"]


def test_chain_command(capsys):
    code, cap = run(["chain", "--s", "2", "--t", "5", "--range", "-4..8"], capsys)
    assert code == 0
    data = json.loads(cap.out)
    assert data["window"]["points"]["4"] == ["1", "5/2", "1/2"]
    assert set(data["residuals"].values()) == {"0"}
    assert data["cubic"]["coefficients"][4] == "-3"


def test_qseries_command(capsys):
    code, cap = run(["qseries", "--n", "7", "--a", "1", "--qprec", "6"], capsys)
    assert code == 0
    data = json.loads(cap.out)
    assert len(data["sigma"]) == 6 and data["sigma"][0][0] == "-5/14"


def test_numeric_oracle_floats_are_tagged(capsys):
    code, cap = run(["numeric-oracle", "--n", "10", "--qprec", "30"], capsys)
    assert code == 0
    data = json.loads(cap.out)
    assert data["approximate"] is True and data["max_abs_diff"] < 1e-9


def test_matroid_command(capsys):
    code, cap = run(["matroid", "--special", "T6prime", "--t", "3"], capsys)
    assert code == 0
    assert json.loads(cap.out)["realization"]["is_realization"]


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "40"],
    ["verify", "--n", "10", "--qprec", "3"],
    ["verify", "--n", "10", "--checks", "nonsense"],
    ["psi", "--n", "9"],
    ["cusp", "--n", "12", "--a", "4"],
    ["chain", "--s", "2", "--t", "1"],
    ["chain", "--s", "2", "--t", "5", "--range", "0..3"],
    ["matroid", "--n", "7", "--t", "1"],
    ["numeric-oracle", "--n", "10", "--tau", "-1j"],
    ["bogus"],
    [],
])
def test_invalid_configuration_exits_2(argv, capsys):
    assert cli.main(argv) == 2


def _failing(n, qprec, zprec):
    rep = VerificationReport("injected", n, qprec)
    rep.fail("always", "injected failure")
    return [rep]


def _passing(n, qprec, zprec):
    rep = VerificationReport("fine", n, qprec)
    rep.expect("ok", True)
    return [rep]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.booleans(), min_size=1, max_size=4), st.sampled_from([10, 11, 12]))
def test_exit_code_contract(flags, n):
    names = []
    saved = dict(cli.VERIFY_SUITES)
    try:
        for i, ok in enumerate(flags):
            name = f"probe{i}"
            cli.VERIFY_SUITES[name] = _passing if ok else _failing
            names.append(name)
        cfg = cli.RunConfig("verify", [n], 10, 6, os.devnull, "json", 1, 30, {"checks": ",".join(names)})
        assert cli.run(cfg) == (0 if all(flags) else 1)
    finally:
        cli.VERIFY_SUITES.clear()
        cli.VERIFY_SUITES.update(saved)


def test_failing_report_is_still_written(tmp_path, monkeypatch):
    monkeypatch.setitem(cli.VERIFY_SUITES, "injected", _failing)
    out = tmp_path / "fail.json"
    assert cli.main(["verify", "--n", "10", "--checks", "injected,st", "-o", str(out)]) == 1
    data = json.loads(out.read_text())
    assert data["status"] == "fail"
    assert [r["status"] for r in data["reports"]] == ["fail", "pass"]


def test_library_errors_inside_a_suite_become_failures(monkeypatch, capsys):
    from modmat.errors import NoSolutionAtPrecision

    def boom(n, qprec, zprec):
        raise NoSolutionAtPrecision("no solution")
    monkeypatch.setitem(cli.VERIFY_SUITES, "boom", boom)
    code, cap = run(["verify", "--n", "10", "--checks", "boom"], capsys)
    assert code == 1
    assert "NoSolutionAtPrecision" in cap.out


def test_deterministic_across_runs_and_threads(tmp_path):
    paths = []
    for i, threads in enumerate(("1", "1", "3")):
        p = tmp_path / f"r{i}.json"
        assert cli.main(["verify", "--n-range", "10..11", "--checks", "st,bk,cubic",
                         "--threads", threads, "-o", str(p)]) == 0
        paths.append(p.read_bytes())
    assert paths[0] == paths[1] == paths[2]


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("MODMAT_THREADS", "4")
    args = cli.build_parser().parse_args(["verify", "--n", "10"])
    assert cli.config_from_args(args).threads == 4
    monkeypatch.setenv("MODMAT_THREADS", "junk")
    assert cli.config_from_args(args).threads == 1


def test_csv_output(tmp_path):
    out = tmp_path / "r.csv"
    assert cli.main(["psi", "--n", "10", "--checks", "cubic", "--format", "csv", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "check,level,qprec,status,residual_order,case,result"
    assert len(lines) == 11 and all(l.endswith("True") for l in lines[1:])


def test_atomic_write_leaves_no_temporaries(tmp_path):
    target = tmp_path / "x.json"
    cli.write_atomic(str(target), "{}\n")
    cli.write_atomic(str(target), "[]\n")
    assert target.read_text() == "[]\n"
    assert os.listdir(tmp_path) == ["x.json"]


def test_output_matches_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((__import__("pathlib").Path(__file__).parents[1] / "docs" / "schema.json").read_text())
    for argv in (["psi", "--n", "10", "--checks", "alt"], ["cusp", "--n", "14", "--kind", "boroczky"],
                 ["chain", "--s", "3", "--t", "7"], ["qseries", "--n", "10", "--a", "3", "--qprec", "5"],
                 ["matroid", "--n", "9", "--t", "2"], ["numeric-oracle", "--n", "13", "--qprec", "30"]):
        out = tmp_path / "o.json"
        assert cli.main(argv + ["-o", str(out)]) == 0
        jsonschema.validate(json.loads(out.read_text()), schema)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modmat.cli", "matroid", "--n", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["nonbases"] == [[0, 1, 4], [0, 2, 3]]
