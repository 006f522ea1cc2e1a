import io
import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from zernike_disc import cli
from zernike_disc.cli import format_complex, format_float, matrix_csv, run_command
from zernike_disc.quantization import ladder_matrices

GOLDEN = Path(__file__).parent / "golden" / "verify_report.json"
REGENERATE = os.environ.get("ZERNIKE_DISC_REGEN_GOLDEN") == "1"


def run(argv):
    out = io.StringIO()
    code = run_command(argv, out=out)
    return code, out.getvalue()


def normalized_report(report):
    """Drop residuals, timing, environment and reported numbers: what remains is the schema."""
    if isinstance(report, dict):
        out = {}
        for key, value in report.items():
            if key in ("residual", "timing", "environment"):
                continue
            if key == "info":
                value = [{k: (v if k == "id" else type(v).__name__) for k, v in item.items()} for item in value]
            out[key] = normalized_report(value)
        return out
    if isinstance(report, list):
        return [normalized_report(v) for v in report]
    return report


def test_formatting():
    assert format_float(1 / 3) == "0.33333333333333331"
    assert format_complex(0.5 - 2j) == "0.5-2j"
    a_z, _ = ladder_matrices(0, 0.0, 3)
    lines = matrix_csv(a_z).splitlines()
    assert lines[0] == "# n=0 alpha=0 M=3 provenance=closed_form"
    assert len(lines) == 4 and all(len(line.split(",")) == 3 for line in lines[1:])


def test_kernel_origin():
    code, out = run(["kernel", "0", "0", "0", "0"])
    assert code == 0
    assert out.strip() == "0.31830988618379069+0j path=diagonal"


def test_kernel_paths():
    code, out = run(["kernel", "2", "0.5", "0.3+0.1i", "-0.2j"])
    assert code == 0 and "path=closed" in out
    code, out = run(["kernel", "2", "0.5", "-0.3", "-1e-1-0.2j", "--series", "50"])
    assert code == 0 and "path=series terms=50 tail_bound=" in out


def test_eval_poly():
    code, out = run(["eval-poly", "1", "1", "0", "0.5"])
    assert code == 0
    assert complex(out.strip()) == pytest.approx(-0.5, abs=1e-15)
    code, out = run(["eval-poly", "2", "0", "0.5", "-0.3+0.4i"])
    assert code == 0
    assert complex(out.strip()) == pytest.approx((-0.3 + 0.4j) ** 2, abs=1e-15)
    code, out = run(["eval-poly", "3", "1", "0", "0.2+0.1j", "--path", "j_sum"])
    code2, out2 = run(["eval-poly", "3", "1", "0", "0.2+0.1j", "--path", "k_sum"])
    assert code == code2 == 0
    assert complex(out.strip()) == pytest.approx(complex(out2.strip()), rel=1e-13)


def test_quantize_csv(tmp_path):
    code, out = run(["quantize", "--f", "z", "--n", "0", "--alpha", "0", "--M", "6"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# n=0 alpha=0 M=6 provenance=quadrature"
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    assert rows.shape == (6, 6)
    assert lines[1].split(",")[1].startswith("0.70710678118654")
    assert np.allclose(np.diag(rows, 1), [np.sqrt((m + 1) ** 2 / ((m + 2) * (m + 1))) for m in range(5)], rtol=1e-12)
    target = tmp_path / "a.csv"
    code, out = run(["quantize", "--f", "z", "--n", "0", "--alpha", "0", "--M", "6", "--csv", str(target)])
    assert code == 0 and out == "" and target.read_text() == "\n".join(lines) + "\n"


def test_berezin_and_lower_symbol():
    code, out = run(["berezin", "--f", "1", "--z", "0.3+0.2i", "--n", "1", "--alpha", "0.5", "--lower-symbol"])
    assert code == 0
    first, second = out.splitlines()
    assert complex(first) == pytest.approx(1.0, abs=1e-9)
    assert second.startswith("lower_symbol ")
    assert complex(second.split()[1]) == pytest.approx(1.0, abs=1e-9)


def test_compare_su11(tmp_path):
    code, out = run(["compare-su11", "--eta", "1", "--n", "0", "--alpha", "0"])
    assert code == 0
    assert out.splitlines()[-1].endswith("not related by parameter adjustment")
    target = tmp_path / "c.json"
    code, _ = run(["compare-su11", "--eta", "1", "--n", "0", "--alpha", "0", "--json", str(target)])
    report = json.loads(target.read_text())
    assert code == 0 and report["format"] == "report_v1" and report["su11_linear"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["kernel", "0", "0", "0"],
        ["kernel", "0", "0", "zz", "0"],
        ["verify", "nonsense"],
        ["quantize", "--f", "z +", "--n", "0", "--alpha", "0", "--M", "4"],
        ["quantize", "--f", "z^99", "--n", "0", "--alpha", "0", "--M", "4"],
        ["kernel", "0", "0", "1.5", "0"],
        ["eval-poly", "-1", "0", "0", "0.1"],
        ["compare-su11", "--eta", "0.5", "--n", "0", "--alpha", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    assert capsys.readouterr().err


def test_numeric_failures(capsys):
    code, _ = run(["berezin", "--f", "1/(z - z)", "--z", "0.1", "--n", "0", "--alpha", "0"])
    assert code == 3
    code, _ = run(["kernel", "1", "0", "0.9999999", "0.99999995"])
    assert code == 3
    assert "numeric failure" in capsys.readouterr().err


def test_failed_check_exit_code(monkeypatch):
    def failing(suites, alpha, max_m):
        check = {"id": "x", "params": {}, "residual": 1.0, "threshold": 0.0, "passed": False}
        return {"passed": False, "timing": {"seconds": 0.0}, "suites": [{"suite": "s", "checks": [check]}]}

    monkeypatch.setattr(cli, "run_suites", failing)
    code, out = run(["verify", "polynomials"])
    assert code == 1 and out.startswith("FAIL s.x") and "overall: FAIL" in out


def test_help_exits_cleanly(capsys):
    assert run_command(["--help"]) == 0
    assert "verify" in capsys.readouterr().out


def test_verify_report_matches_golden(tmp_path):
    target = tmp_path / "report.json"
    code, out = run(["verify", "all", "--alpha", "0", "--max-m", "10", "--json", str(target)])
    assert code == 0 and out.splitlines()[-1].startswith("overall: PASS")
    report = json.loads(target.read_text())
    assert report["format"] == "report_v1" and report["passed"]
    for suite in report["suites"]:
        assert suite["passed"] == all(c["passed"] for c in suite["checks"])
        for check in suite["checks"]:
            assert check["residual"] <= check["threshold"]
    normalized = normalized_report(report)
    if REGENERATE:
        GOLDEN.write_text(json.dumps(normalized, indent=2, sort_keys=True) + "\n")
    assert normalized == json.loads(GOLDEN.read_text())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zernike_disc", "kernel", "0", "0", "0", "0"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.startswith("0.31830988618379069")
