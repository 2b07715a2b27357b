import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from shlie.cli import main
from shlie.formats import (
    InputError,
    Report,
    format_algebra,
    matrix_records,
    parse_algebra,
    parse_report,
    read_matrix_records,
)
from shlie.leibniz import adjoint_module, sl2
from shlie.linalg import SparseMatrix, parse_field

ALGEBRAS = Path(__file__).resolve().parent.parent / "algebras"


def run(capsys, *argv):
    code = main(list(argv) + ["--no-cache"])
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text, kind):
    return [f for k, f in parse_report(text) if k == kind]


# ------------------------------------------------------------ algebra files


def test_parse_algebra_round_trip():
    A = sl2()
    M = adjoint_module(A)
    text = format_algebra(A, M, parse_field("prime:101"))
    B, N, field = parse_algebra(text)
    assert B.c == A.c
    assert [m.entries for m in N.action] == [m.entries for m in M.action]
    assert field.p == 101


@pytest.mark.parametrize("text, fragment", [
    ("bracket 0 1 1 0\n", "bracket before dim"),
    ("dim 2\nbracket 0 1 1\n", "2 coefficients"),
    ("dim 2\nbracket 0 1 x 0\n", "bad scalar"),
    ("dim 2\nbracket 0 5 1 0\n", "out of range"),
    ("dim 2\nfrobnicate\n", "unknown record"),
    ("dim 3\nbracket 0 1 0 0 1\nbracket 1 2 1 0 0\nbracket 0 2 1 0 0\n", "Jacobi"),
    ("field reals\ndim 1\n", "unknown field"),
    ("# nothing\n", "missing dim"),
    ("dim 2\nbracket 0 1 1 0\nmodule 1\naction 0 0 0 1\n", "module identity"),
])
def test_parse_algebra_errors(text, fragment):
    with pytest.raises(InputError, match=fragment):
        parse_algebra(text)


def test_shipped_algebra_files_parse():
    for path in sorted(ALGEBRAS.glob("*.lie")):
        A, M, _ = parse_algebra(path.read_text(), str(path))
        M.validate(A)


# ------------------------------------------------------------ reports


def test_report_rendering_and_parsing():
    r = Report(["shlie", "x"])
    r.add("thing", name="two words", value=[1, 2], ok=True)
    r.verdict("check", False, "because")
    text = r.to_text()
    assert text.splitlines()[0].startswith("shlie-report format=1")
    assert 'name="two words"' in text and "value=1,2" in text and "ok=pass" in text
    assert text.rstrip().endswith("status result=fail")
    assert records(text, "thing") == [{"name": "two words", "value": "1,2", "ok": "pass"}]
    assert json.loads(r.to_json())["status"] == "fail"


def test_matrix_records_round_trip():
    from fractions import Fraction

    m = SparseMatrix(2, 3, {(0, 1): Fraction(-1, 2), (1, 2): 4})
    r = Report(["shlie"])
    r.extend(matrix_records("d1", m))
    assert read_matrix_records(r.to_text()) == {"d1": m}


# ------------------------------------------------------------ commands


def test_basis_command(capsys):
    code, out, _ = run(capsys, "basis", "2", "1")
    assert code == 0
    assert [f["blocks"] for f in records(out, "tuple")] == ["0,1|2", "0,2|1", "0|1,2"]
    for n, m, count in (("2", "0", 2), ("1", "2", 0)):
        code, out, _ = run(capsys, "basis", n, m)
        assert code == 0 and len(records(out, "tuple")) == count


def test_compose_command(capsys):
    code, out, _ = run(capsys, "compose", "0,2|1", "0,1,5|2|3,6,4")
    assert code == 0
    terms = {f["blocks"]: f["coeff"] for f in records(out, "term")}
    assert terms == {"0,1,5,3,6,4|2": "1", "0,1,5,4,3,6|2": "-1", "0,1,5,4,6,3|2": "1", "0,1,5,6,3,4|2": "-1"}


def test_cuts_command(capsys):
    code, out, _ = run(capsys, "cuts", "0,2,1,5,3,4")
    assert code == 0
    assert records(out, "cuts") == [{"tuple": "0,2,1,5,3,4", "value": "2,4,5"}]
    assert len(records(out, "split_tuple")) == 8


@pytest.mark.parametrize("n", [0, 3])
def test_verify_command(capsys, n):
    code, out, _ = run(capsys, "verify", str(n))
    assert code == 0
    dims = [int(f["dim"]) for f in records(out, "homology")]
    assert dims == ([1] if n == 0 else [0] * (n + 1))
    assert all(f["result"] == "pass" for f in records(out, "verdict"))


def test_verify_dump_and_workers(capsys):
    code, out, _ = run(capsys, "verify", "3", "--dump")
    assert code == 0
    mats = read_matrix_records(out)
    assert sorted(mats) == ["d1", "d2", "d3"]
    code2, out2, _ = run(capsys, "--workers", "2", "verify", "3", "--dump")
    assert code2 == 0 and out2.replace("--workers 2 ", "") == out


def test_homology_command(capsys):
    code, out, _ = run(capsys, "homology", str(ALGEBRAS / "abelian2.lie"), "4")
    assert code == 0
    assert [int(f["dim"]) for f in records(out, "homology")] == [1, 2, 4, 8]
    assert records(out, "truncation")[0]["status"] == "lower_bound"
    code, out, _ = run(capsys, "homology", str(ALGEBRAS / "nonabelian2.lie"), "3")
    assert [int(f["dim"]) for f in records(out, "homology")] == [1, 1, 1]
    code, out, _ = run(capsys, "homology", str(ALGEBRAS / "sl2.lie"), "3")
    assert int(records(out, "homology")[1]["dim"]) == 0
    assert {f["name"]: f["result"] for f in records(out, "verdict")} == {
        "direct_equals_loday_functor": "pass", "h0_formula": "pass"}


def test_homology_field_override(capsys):
    code, out, _ = run(capsys, "homology", str(ALGEBRAS / "sl2.lie"), "2", "--field", "prime:3")
    assert code == 0
    assert records(out, "field") == [{"name": "prime:3"}]


def test_tor_command(capsys):
    code, out, _ = run(capsys, "tor", "atomic", "2")
    assert code == 0
    assert [(f["leibniz"], f["tor"]) for f in records(out, "degree")] == [("0", "0"), ("0", "0"), ("1", "1")]
    code, out, _ = run(capsys, "tor", "loday", str(ALGEBRAS / "nonabelian2.lie"), "3", "--degrees", "1")
    assert code == 0
    assert [(f["leibniz"], f["tor"]) for f in records(out, "degree")] == [("1", "1"), ("1", "1")]
    assert records(out, "caveat")
    code, out, _ = run(capsys, "tor", "projective", "2")
    assert code == 0


def test_json_output(capsys):
    code, out, _ = run(capsys, "basis", "2", "0", "--json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    assert [r["blocks"] for r in data["records"] if r["kind"] == "tuple"] == ["0,1,2", "0,2,1"]
    assert "stats" not in data


def test_stats_are_opt_in(capsys):
    _, out, _ = run(capsys, "basis", "3", "1")
    assert not records(out, "stat")
    _, out, _ = run(capsys, "basis", "3", "1", "--stats")
    assert {f["name"] for f in records(out, "stat")} >= {"seconds", "cache_built"}


@pytest.mark.parametrize("argv", [
    ["compose", "0,2|1", "0,1"],
    ["compose", "1,0", "0,1"],
    ["cuts", "1,0,2"],
    ["homology", "/nonexistent/file.lie", "2"],
    ["basis", "2", "1", "--field", "prime:4"],
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_bad_algebra_file_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.lie"
    bad.write_text("dim 2\nbracket 0 1 1 0\nbracket 1 0 0 1\n")
    code, _, err = run(capsys, "homology", str(bad), "2")
    assert code == 2 and "twice" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["tor", "nonsense", "1"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["basis", "-1", "0"])
    assert e.value.code == 2


def test_reports_are_byte_identical_across_runs_and_cache_states(tmp_path):
    env = dict(os.environ, SHLIE_CACHE_DIR=str(tmp_path / "c"))
    cmd = [sys.executable, "-m", "shlie", "verify", "3"]
    outs = [subprocess.run(cmd, capture_output=True, env=env, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
    assert os.listdir(tmp_path / "c")
    no_cache = subprocess.run(cmd + ["--no-cache"], capture_output=True, env=env, check=True).stdout
    assert no_cache.replace(b" --no-cache", b"") == outs[0]
