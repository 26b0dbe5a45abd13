"""Command-line interface: golden outputs, exit codes, and determinism."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

import qforms

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "qforms.cli", *args],
                          capture_output=True, text=True, env=env)


GOLDEN_CASES = [
    ("count_power.csv", ["count", "power", "--nu", "3", "--n", "1725..1735"]),
    ("count_quad_series.csv", ["count", "quad", "--diag", "1,1,1,1", "--n", "0..20"]),
    ("count_tri_closed.csv", ["count", "tri", "--m", "1", "--vars", "4",
                              "--method", "closed", "--n", "0..20"]),
    ("count_quintic.json", ["count", "quintic", "--n", "1..40", "--format", "json"]),
    ("count_expmethod.csv", ["count", "expmethod", "--terms", "2:-1,2:-1", "--n", "0..12"]),
    ("table_classnumber.csv", ["table", "classnumber", "--n", "3..40"]),
    ("table_fkh.csv", ["table", "fkh", "--k", "3", "--h", "2", "--n", "1..24"]),
    ("theta_theta3.csv", ["theta", "theta3", "--order", "30"]),
    ("theta_general_alt.json", ["theta", "general", "--k", "2", "--h", "1",
                                "--alt", "--order", "25", "--format", "json"]),
    ("identity_jacobik.csv", ["identity", "jacobik", "--r", "2"]),
    ("identity_sinh.csv", ["identity", "sinh", "--variant", "eq69", "--x", "0.7",
                           "--k", "2", "--h", "1"]),
    ("identity_tripleproduct.csv", ["identity", "tripleproduct", "--p", "1",
                                    "--order", "40"]),
    ("circle_scan.csv", ["circle", "scan", "--xmax", "20", "--step", "1"]),
    ("circle_fresnel.csv", ["circle", "fresnel", "--z", "1.5"]),
    ("circle_rexp.csv", ["circle", "rexp", "--x", "25.3", "--N", "1",
                         "--ncut", "500", "--kcut", "500"]),
]


@pytest.mark.parametrize("fname,args", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden_output(fname, args):
    proc = run_cli(*args)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == (GOLDEN / fname).read_text()


# -- documented examples ------------------------------------------------------


def test_taxicab_count_line():
    proc = run_cli("count", "power", "--nu", "3", "--n", "1729")
    assert proc.returncode == 0
    assert proc.stdout == "1729,4,closed\n"


def test_two_form_at_zero():
    proc = run_cli("count", "quad", "--diag", "1,2", "--n", "0", "--method", "closed")
    assert proc.returncode == 0
    assert proc.stdout == "0,1,closed\n"


# -- exit codes ----------------------------------------------------------------


def test_usage_error_exits_1():
    assert run_cli("count", "bogus").returncode == 1
    assert run_cli("frobnicate").returncode == 1
    assert run_cli("count", "quad", "--format", "xml").returncode == 1


def test_bad_thread_env_exits_1():
    proc = run_cli("count", "power", "--n", "5", env_extra={"QFORMS_THREADS": "many"})
    assert proc.returncode == 1


def test_precondition_violations_exit_2():
    assert run_cli("count", "quad", "--diag", "2,2", "--n", "0..5").returncode == 2
    assert run_cli("count", "tri", "--m", "1", "--vars", "3",
                   "--method", "closed", "--n", "0..5").returncode == 2
    assert run_cli("identity", "app1", "--A", "2", "--B", "4",
                   "--C", "0", "--D", "0").returncode == 2
    assert run_cli("circle", "hardy", "--x", "10").returncode == 2
    assert run_cli("count", "expmethod", "--terms", "3:1", "--n", "0..5").returncode == 2


def test_cross_check_failure_exits_3():
    proc = run_cli("count", "quintic", "--variant", "as-printed",
                   "--verify", "oracle", "--n", "30..70")
    assert proc.returncode == 3
    assert "oracle" in proc.stderr


def test_verified_paths_exit_0():
    cases = [
        ["count", "quad", "--diag", "1,2", "--n", "0..60", "--verify", "oracle"],
        ["count", "quad", "--diag", "1,1,2", "--n", "0..40", "--verify", "oracle"],
        ["count", "affine", "--diag", "1,2", "--lin", "2,4", "--const", "1",
         "--n", "0..40", "--verify", "oracle"],
        ["count", "tri", "--m", "2", "--vars", "3", "--n", "0..30", "--verify", "oracle"],
        ["count", "tri", "--m", "3", "--vars", "4", "--method", "closed",
         "--n", "0..30", "--verify", "oracle"],
        ["count", "power", "--nu", "4", "--n", "0..200", "--verify", "oracle"],
        ["count", "cubic", "--n", "1..200", "--verify", "oracle"],
        ["count", "quintic", "--n", "1..200", "--verify", "oracle"],
        ["count", "expmethod", "--terms", "3:-2,3:-2", "--n", "0..40",
         "--verify", "oracle"],
        ["circle", "hardy", "--x", "2.5", "--ncut", "20000", "--verify", "oracle"],
    ]
    for args in cases:
        proc = run_cli(*args)
        assert proc.returncode == 0, (args, proc.stderr)


def test_help_exits_0():
    assert run_cli("--help").returncode == 0
    assert run_cli("count", "--help").returncode == 0


# -- output plumbing ----------------------------------------------------------------


def test_json_envelope_shape():
    payload = json.loads((GOLDEN / "count_quintic.json").read_text())
    assert sorted(payload) == ["method", "rows", "spec", "tool_version"]
    assert payload["tool_version"] == qforms.__version__
    assert payload["spec"]["family"] == "quintic"
    assert payload["rows"][0] == [1, 2, "amended"]


def test_out_file_matches_stdout(tmp_path):
    args = ["table", "sigma", "--a", "2", "--n", "1..30"]
    proc = run_cli(*args)
    out = tmp_path / "sigma.csv"
    proc2 = run_cli(*args, "--out", str(out))
    assert proc2.returncode == 0 and proc2.stdout == ""
    assert out.read_text() == proc.stdout


def test_byte_determinism_across_runs_and_threads():
    args = ["circle", "scan", "--xmax", "50", "--step", "0.5", "--format", "json"]
    a = run_cli(*args).stdout
    b = run_cli(*args).stdout
    c = run_cli(*args, env_extra={"QFORMS_THREADS": "1"}).stdout
    d = run_cli(*args, env_extra={"QFORMS_THREADS": "8"}).stdout
    assert a == b == c == d


def test_scan_header_and_float_format():
    proc = run_cli("circle", "scan", "--xmax", "3", "--step", "1")
    lines = proc.stdout.splitlines()
    assert lines[0] == "x,count,pi_x,R,R_scaled"
    # 12 significant digits on floats
    assert lines[1].split(",")[2] == "3.14159265359"
