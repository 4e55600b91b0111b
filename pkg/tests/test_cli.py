import json
import subprocess

import pytest
from click.testing import CliRunner

from cmcert.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kw):
    return runner.invoke(main, list(args), **kw)


def write_poly(tmp_path, name, lines):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def test_help_exits_zero(runner):
    result = invoke(runner, "--help")
    assert result.exit_code == 0
    assert "certify-poly" in result.output


def test_unknown_command_is_usage_error(runner):
    result = invoke(runner, "no-such-command")
    assert result.exit_code == 64


def test_missing_required_option_is_usage_error(runner):
    result = invoke(runner, "bessel")
    assert result.exit_code == 64


def test_bad_rational_is_usage_error(runner):
    result = invoke(runner, "bessel", "--k", "1", "--u", "abc")
    assert result.exit_code == 64


def test_bad_format_is_config_error(runner):
    result = invoke(runner, "--format", "xml", "bessel", "--k", "1",
                    "--u", "1")
    assert result.exit_code == 65


def test_low_precision_is_config_error(runner):
    result = invoke(runner, "--precision", "2", "ladder", "--k-max", "6")
    assert result.exit_code == 65


def test_config_file_parse_error(runner, tmp_path):
    cfgfile = tmp_path / "bad.cfg"
    cfgfile.write_text("precision 40\n")
    result = invoke(runner, "--config", str(cfgfile), "ladder",
                    "--k-max", "6")
    assert result.exit_code == 65


def test_config_file_applies_and_flag_overrides(runner, tmp_path):
    cfgfile = tmp_path / "ok.cfg"
    cfgfile.write_text("# comment\nprecision = 20\nformat = json\n")
    result = invoke(runner, "--config", str(cfgfile), "bessel", "--k", "1",
                    "--u", "1")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert "lo" in doc and "hi" in doc

    result = invoke(runner, "--config", str(cfgfile), "--format", "text",
                    "bessel", "--k", "1", "--u", "1")
    assert result.exit_code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(result.output)


def test_certify_poly_pass_and_fail(runner, tmp_path):
    good = write_poly(tmp_path, "good.poly",
                      ["101  # constant", "-20", "1"])
    result = invoke(runner, "certify-poly", "--file", good,
                    "--interval", "0,6")
    assert result.exit_code == 0

    bad = write_poly(tmp_path, "bad.poly", ["-2", "0", "1"])
    result = invoke(runner, "certify-poly", "--file", bad,
                    "--interval", "0,6")
    assert result.exit_code == 1
    assert "witness" in result.output


def test_certify_poly_bad_coefficient(runner, tmp_path):
    p = write_poly(tmp_path, "junk.poly", ["1", "oops"])
    result = invoke(runner, "certify-poly", "--file", p, "--interval", "0,1")
    assert result.exit_code == 64


def test_shift_chain_output(runner, tmp_path):
    p = write_poly(tmp_path, "p.poly", ["1", "1"])  # 1 + x
    result = invoke(runner, "shift-chain", "--file", p, "--shifts", "2")
    assert result.exit_code == 0
    assert "3" in result.output  # (x + 2) + 1 has constant 3


def test_kernel_ineq_csv(runner):
    result = invoke(runner, "--format", "csv",
                    "--grid", "geometric:0.5,5,6", "kernel-ineq", "--k", "2")
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l]
    assert lines[0].startswith("u,")
    assert all(line.endswith("pass") for line in lines[1:])


def test_ratio_mono_and_ladder(runner):
    result = invoke(runner, "ratio-mono", "--which", "C", "--beta", "1/2",
                    "--count", "10")
    assert result.exit_code == 0
    result = invoke(runner, "ladder", "--k-max", "8")
    assert result.exit_code == 0


def test_cm_check_json(runner):
    result = invoke(runner, "--format", "json", "--precision", "20",
                    "--grid", "geometric:0.5,10,4",
                    "cm-check", "--alpha", "1", "--beta", "1", "--r", "4",
                    "--orders", "3")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["summary"] == "pass"


def test_cm_check_failure_exit_code(runner):
    # alpha*beta < 1: the gap is not completely monotonic of any degree and
    # low orders already show a sign violation at r = 1
    result = invoke(runner, "--precision", "20",
                    "--grid", "geometric:0.5,10,4",
                    "cm-check", "--alpha", "1/4", "--beta", "1", "--r", "0",
                    "--orders", "2")
    assert result.exit_code == 1


def test_verify_identity_and_p_limit(runner):
    result = invoke(runner, "verify-identity", "--k", "2", "--terms", "20")
    assert result.exit_code == 0
    result = invoke(runner, "p-limit", "--t", "1,10,1000")
    assert result.exit_code == 0


def test_bad_grid_spec_is_usage_error(runner):
    result = invoke(runner, "--grid", "fancy:1,2,3", "kernel-ineq",
                    "--k", "1")
    assert result.exit_code == 64


def test_deterministic_reruns_are_byte_identical():
    cmd = ["cmcert", "--format", "json", "--precision", "20", "bessel",
           "--k", "3", "--u", "7/2"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
