import json
import subprocess
import sys

import pytest

from almostnorlund.cli import main

BASE = 'signal = "weierstrass(0.9, 12)"\nmethod = "cesaro(1)"\nn_values = [16, 32, 64, 128, 256]\n'


def write(tmp_path, text, name="run.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run_cli(tmp_path, text, capsys=None):
    out = tmp_path / "out" / "res"
    code = main([write(tmp_path, text), "--output", str(out)])
    return code, out


def summary(out):
    return json.loads(out.with_suffix(".json").read_text())


def test_classify_geometric(tmp_path):
    code, out = run_cli(tmp_path, 'command = "classify"\nsequence = "geometric(0.5)"\n'
                                  '[classify]\nvariation_class = "RBVS"\nN = 32\n')
    s = summary(out)
    assert code == 0 and s["holds"] and s["minimal_K"] == 1.0 and s["class"] == "RBVS"
    lines = out.with_suffix(".csv").read_text().splitlines()
    assert lines[0] == "n,variation_sum,c_n,ratio" and len(lines) == 33


def test_classify_failure_exit_one(tmp_path):
    code, out = run_cli(tmp_path, 'command = "classify"\nsequence = "geometric(0.5)"\n'
                                  '[classify]\nvariation_class = "HBVS"\nN = 2\nK = 1.0\n')
    assert code == 1 and summary(out)["first_violation_index"] == 2


def test_rates_pass(tmp_path, capsys):
    code, out = run_cli(tmp_path, 'command = "rates"\n' + BASE)
    assert code == 0
    s = summary(out)
    assert s["pass"] and s["theoretical_slope"] == pytest.approx(-0.4)
    assert out.with_suffix(".csv").read_bytes().startswith(b"n,R_n,P_n,Q_n,error,log_error\n")
    err = capsys.readouterr().err
    assert "fitted slope" in err and err.rstrip().endswith("PASS")


def test_rates_degenerate(tmp_path):
    code, out = run_cli(tmp_path, 'command = "rates"\nsignal = "constant(3)"\n'
                                  'method = "harmonic"\n')
    assert code == 0 and summary(out)["degenerate"] is True


def test_rates_zero_tolerance_fails(tmp_path):
    code, out = run_cli(tmp_path, 'command = "rates"\n' + BASE.replace('"cesaro(1)"',
                        '{p = "cesaro(2)", mode = "ordinary"}')
                        + '[lip]\nr = "inf"\n[verify]\nslope_tolerance = 0.0\n')
    assert code == 1 and summary(out)["pass"] is False


def test_conjugate(tmp_path):
    code, out = run_cli(tmp_path, 'command = "conjugate"\nsignal = "cosk(2)"\n'
                                  '[verify]\nx_points = 16\n')
    s = summary(out)
    assert code == 0 and s["max_deviation"] < 1e-6 and s["reference"] is True
    assert len(out.with_suffix(".csv").read_text().splitlines()) == 17


def test_means(tmp_path):
    code, out = run_cli(tmp_path, 'command = "means"\nsignal = "weierstrass(0.9, 6)"\n'
                                  'method = "harmonic"\nn_values = [4, 8]\n'
                                  '[verify]\nx_points = 8\n')
    assert code == 0 and summary(out)["vanishing_verified"]
    assert len(out.with_suffix(".csv").read_text().splitlines()) == 1 + 2 * 8


def test_corollaries(tmp_path):
    code, out = run_cli(tmp_path, 'command = "corollaries"\n' + BASE)
    s = summary(out)
    assert [r["label"] for r in s["reports"]] == ["sup_norm", "riesz_q1", "norlund_p1"]
    for label in ("sup_norm", "riesz_q1", "norlund_p1"):
        assert (out.parent / f"res_{label}.csv").exists()
    assert code == (0 if s["pass"] else 1)


def test_config_error_exit_two(tmp_path, capsys):
    assert main([write(tmp_path, 'command = "rates"\nsignal = "nosuch"\n')]) == 2
    assert "config error" in capsys.readouterr().err
    assert main([str(tmp_path / "missing.toml")]) == 2


def test_unwritable_output_exit_two(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code = main([write(tmp_path, 'command = "rates"\n' + BASE), "--output",
                 str(blocker / "sub" / "res")])
    assert code == 2


def test_numeric_error_exit_three(tmp_path, capsys):
    # two distinct R_n values cannot support a slope fit
    text = 'command = "rates"\nmethod = {p = "1", q = "ones"}\nn_values = [0, 1, 2]\n'
    assert main([write(tmp_path, text)]) == 3
    assert "InsufficientDataError" in capsys.readouterr().err


def test_byte_identical_runs(tmp_path):
    cfg = write(tmp_path, 'command = "corollaries"\n' + BASE)
    main([cfg, "--output", str(tmp_path / "a")])
    main([cfg, "--output", str(tmp_path / "b")])
    for suffix in ("_sup_norm.csv", "_riesz_q1.csv", "_norlund_p1.csv", ".json"):
        assert (tmp_path / f"a{suffix}").read_bytes() == (tmp_path / f"b{suffix}").read_bytes()


def test_module_entry_point(tmp_path):
    cfg = write(tmp_path, 'command = "classify"\n')
    proc = subprocess.run([sys.executable, "-m", "almostnorlund", cfg, "--output",
                           str(tmp_path / "m"), "--verbose"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "backend" in proc.stderr
