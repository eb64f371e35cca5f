import json
from io import StringIO

import pytest

from shapeinv.cli import (
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_TRUNCATED,
    EXIT_USAGE,
    run_command,
)


def run(argv, monkeypatch=None, tmp_path=None):
    out = StringIO()
    code = run_command(argv, out)
    return code, out.getvalue()


@pytest.fixture
def outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("SIP_OUT_DIR", str(tmp_path))
    return tmp_path


def test_list_table_has_ten_rows():
    code, text = run(["list"])
    assert code == EXIT_PASS
    rows = [ln for ln in text.splitlines()[1:] if ln.strip()]
    assert len(rows) == 10
    assert any(ln.startswith("morse") for ln in rows)


def test_list_json_is_length_ten():
    code, text = run(["list", "--json"])
    assert code == EXIT_PASS
    assert len(json.loads(text)) == 10


def test_list_single_family_descriptor():
    code, text = run(["list", "--family", "morse"])
    assert code == EXIT_PASS
    d = json.loads(text)
    assert d["name"] == "morse"
    assert {p["name"] for p in d["parameters"]} == {"A", "B", "a"}


def test_verify_pass_exit_zero():
    code, text = run(["verify", "shifted-oscillator", "--omega", "2", "--b", "0"])
    assert code == EXIT_PASS
    assert "estimated constant: 2" in text


def test_verify_morse_reports_seven():
    code, text = run(["verify", "morse", "--A", "4", "--B", "4", "--a", "1", "--json"])
    assert code == EXIT_PASS
    rep = json.loads(text)
    assert rep["passed"] is True
    assert rep["estimated_constant"] == pytest.approx(7.0)


def test_verify_bad_parameters_exit_two():
    code, text = run(["verify", "morse", "--A", "-1"])
    assert code == EXIT_USAGE
    assert "error" in text


def test_verify_unknown_family_usage_error():
    code, _ = run(["verify", "not-a-family"])
    assert code == EXIT_USAGE


def test_spectrum_table():
    code, text = run(["spectrum", "shifted-oscillator", "--omega", "2", "-n", "4"])
    assert code == EXIT_PASS
    assert [ln.split()[1] for ln in text.splitlines()[1:5]] == ["0", "2", "4", "6"]


def test_spectrum_with_oracle_passes():
    code, text = run(["spectrum", "morse", "--A", "4", "--B", "4", "--a", "1",
                      "-n", "4", "--oracle", "--json"])
    assert code == EXIT_PASS
    payload = json.loads(text)
    assert payload["comparison"]["passed"] is True
    assert max(payload["comparison"]["deviations"]) < 1e-3


def test_spectrum_truncation_exit_three():
    code, text = run(["spectrum", "morse", "--A", "2", "--a", "1", "-n", "10"])
    assert code == EXIT_TRUNCATED
    assert "truncated" in text


def test_spectrum_offset_applied():
    code, text = run(["spectrum", "shifted-oscillator", "-n", "2", "--offset", "5"])
    assert code == EXIT_PASS
    assert [ln.split()[1] for ln in text.splitlines()[1:3]] == ["5", "7"]


def test_construct_writes_descriptor_and_manifest(outdir):
    code, text = run(["construct", "--K", "0", "--branch", "linear",
                      "--alpha", "1", "--lambda", "1"])
    assert code == EXIT_PASS
    desc = json.loads((outdir / "constructed.json").read_text())
    assert desc["branch"] == "linear"
    assert desc["shape_invariance"]["passed"] is True
    manifest = json.loads((outdir / "manifest.json").read_text())
    assert manifest["all_passed"] is True
    assert (outdir / "superpotential.csv").exists()
    # the linear K=0 seed gives W = 1/x
    printed = json.loads(text)
    assert printed["K"] == 0.0 and printed["lambda"] == 1.0


def test_3d_command_certifies_unit_step(outdir):
    code, text = run(["3d", "--seed", "a0=2,a1=1", "--lambda", "2", "--mu", "1", "--json"])
    assert code == EXIT_PASS
    payload = json.loads(text)
    assert payload["shape_invariance"]["passed"] is True
    assert payload["riccati_residual"] < 1e-8
    assert (outdir / "fields.csv").exists()
    assert (outdir / "seed.json").exists()


def test_3d_command_fails_wrong_step(outdir):
    code, _ = run(["3d", "--seed", "a0=2,a1=1", "--lambda", "2", "--mu", "2"])
    assert code == EXIT_FAIL


def test_radial_command(outdir):
    code, text = run(["radial", "--ell", "3", "--check-bessel"])
    assert code == EXIT_PASS
    assert text.count("True") >= 6  # five recurrence rows plus the intertwine line
    lines = (outdir / "intertwine.csv").read_text().splitlines()
    assert lines[0] == "r,psi,Bpsi,reference"


def test_json_output_is_byte_deterministic():
    _, a = run(["spectrum", "morse", "-n", "4", "--json"])
    _, b = run(["spectrum", "morse", "-n", "4", "--json"])
    assert a == b
    _, a = run(["list", "--json"])
    _, b = run(["list", "--json"])
    assert a == b


def test_batch_runs_jobs_in_order(outdir, tmp_path):
    jobfile = tmp_path / "jobs.txt"
    jobfile.write_text(
        "verify shifted-oscillator --omega 2\n"
        "# a comment line\n"
        "spectrum morse --A 2 --a 1 -n 10\n"
        "verify morse --A -1\n"
    )
    code, text = run(["--batch", str(jobfile)])
    assert code == EXIT_USAGE  # worst exit code wins: 2 from the bad verify
    # ordered output: headers appear in file order
    first = text.index("$ sip verify shifted-oscillator")
    second = text.index("$ sip spectrum morse")
    third = text.index("$ sip verify morse --A -1")
    assert first < second < third
    assert "[exit 0]" in text and "[exit 3]" in text and "[exit 2]" in text
