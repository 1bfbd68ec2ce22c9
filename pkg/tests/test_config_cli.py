import filecmp
import shutil
import subprocess

import numpy as np
import pytest

from cptlab import cli, config
from cptlab.errors import ConfigError
from cptlab.io import read_csv


def _run(tmp_path, *argv, text=None, name="run.ini"):
    args = list(argv) + ["--out", str(tmp_path / "out")]
    if text is not None:
        path = tmp_path / name
        path.write_text(text)
        args += ["--config", str(path)]
    return cli.main(args)


def test_presets_resolve():
    for command, presets in config.PRESETS.items():
        # a measurement is never part of a preset
        raw = {"estimate": {"measured_p00": "0.01"}} if command == "estimate" else {}
        for name in presets:
            values = config.resolve(command, raw, name)
            assert values["preset"] == name
    with pytest.raises(ConfigError, match="measured_p00"):
        config.resolve("estimate", {}, "fig3b")


def test_explicit_keys_override_preset():
    raw = config.parse_text("[spectrum]\npreset = fig3a\ngamma = 3\ntau2 = inf, 5\n")
    values = config.resolve("spectrum", raw)
    assert values["gamma"] == 3.0 and values["tau2"] == [float("inf"), 5.0]
    assert values["omega1"] == 46.0


@pytest.mark.parametrize("text", [
    "[spectrum]\ngamma = 7\nomega1 = 1\nomega2 = 1\nbogus = 1\n",
    "[spectrum]\ngamma = seven\nomega1 = 1\nomega2 = 1\n",
    "[spectrum]\ngamma = 7\n",
    "[dynamics]\npreset = fig2\n",
    "[spectrum]\npreset = fig9\n",
    "[spectrum]\npreset = fig3a\ngamma = -1\n",
    "[spectrum]\npreset = fig3a\ngamma = nan\n",
    "no section header\n",
])
def test_config_errors_exit_1(tmp_path, text, capsys):
    assert _run(tmp_path, "spectrum", text=text) == 1
    assert "config error" in capsys.readouterr().err


def test_empty_output_grid_is_config_error(tmp_path):
    assert _run(tmp_path, "dynamics", text="[dynamics]\npreset = fig2\nn_points = 0\n") == 1
    with pytest.raises(ConfigError):
        config.resolve("dynamics", {"dynamics": {"n_points": "0"}}, "fig2")


def test_missing_config_and_file(tmp_path):
    assert cli.main(["spectrum", "--out", str(tmp_path)]) == 1
    assert cli.main(["spectrum", "--config", str(tmp_path / "nope.ini")]) == 1


def test_dynamics_preset(tmp_path, capsys):
    assert _run(tmp_path, "dynamics", "--preset", "fig2", "--svg") == 0
    out = tmp_path / "out"
    meta, header, rows = read_csv(out / "dynamics_tau_c-0.01.csv")
    assert float(meta["tau2"]) == pytest.approx(100.0, rel=1e-12)
    assert header[0] == "t" and rows.shape == (2000, 11)
    meta, _, _ = read_csv(out / "dynamics_tau_c-5.csv")
    assert float(meta["tau2"]) == pytest.approx(0.2, rel=1e-12)
    _, header, rows = read_csv(out / "dynamics_rho00.csv")
    assert header == ["t", "rho00_tau_c-0.01", "rho00_tau_c-5"]
    assert rows[-1, 2] > rows[-1, 1]
    assert (out / "dynamics.svg").read_text().startswith("<svg")


def test_spectrum_presets(tmp_path, capsys):
    assert _run(tmp_path, "spectrum", "--preset", "fig3a") == 0
    _, header, rows = read_csv(tmp_path / "out" / "spectrum_tau2-inf.csv")
    assert header == ["param", "value"] and rows.shape == (401, 2)
    assert rows[200, 1] < 1e-10
    assert _run(tmp_path, "spectrum", "--preset", "fig3b") == 0
    _, _, rows = read_csv(tmp_path / "out" / "dip_curve.csv")
    assert np.all(np.diff(rows[:, 1]) < 0)


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["fidelity", "--preset", "fig4a", "--svg"]
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b), "--jobs", "2"]) == 0
    files = sorted(p.name for p in a.iterdir())
    match, mismatch, errors = filecmp.cmpfiles(a, b, files, shallow=False)
    assert not mismatch and not errors and len(match) == 3


def test_fidelity_reports(tmp_path, capsys):
    assert _run(tmp_path, "fidelity", "--preset", "fig4b") == 0
    report = (tmp_path / "out" / "fidelity_omega2_report.txt").read_text()
    assert "saturated: true" in report and "smallest adequate omega2" in report
    assert _run(tmp_path, "fidelity", "--preset", "fig4c") == 0
    assert "(below 0.98)" in capsys.readouterr().out


def test_estimate_success_and_domain_errors(tmp_path, capsys):
    ok = "[estimate]\npreset = fig3b\nmeasured_p00 = 0.0056172\ntau_c = 0.01\n"
    assert _run(tmp_path, "estimate", text=ok) == 0
    meta, header, rows = read_csv(tmp_path / "out" / "estimate.csv")
    assert header == ["measured_p00", "tau2", "alpha", "gamma_e", "tau_c", "c0"]
    assert rows[0, 1] == pytest.approx(100.0, rel=1e-3)
    assert rows[0, 5] == pytest.approx(1.0, rel=1e-3)
    for p in ("0.5", "0"):
        text = f"[estimate]\npreset = fig3b\nmeasured_p00 = {p}\n"
        assert _run(tmp_path, "estimate", text=text) == 3
    assert "estimation error" in capsys.readouterr().err


def test_estimate_round_trip_through_cli(tmp_path, capsys):
    from cptlab.analysis import dip_height
    from cptlab.model import SystemParams
    from cptlab.noise import NoiseStrength

    p00 = dip_height(SystemParams(7.0, 46.0, 46.0), NoiseStrength.from_tau2(50.0))
    text = f"[estimate]\npreset = fig3b\nmeasured_p00 = {p00!r}\n"
    assert _run(tmp_path, "estimate", text=text) == 0
    _, _, rows = read_csv(tmp_path / "out" / "estimate.csv")
    assert rows[0, 1] == pytest.approx(50.0, rel=5e-3)


def test_numerical_failure_exit_2(tmp_path, monkeypatch, capsys):
    from cptlab import analysis

    monkeypatch.setattr(analysis, "_dip_point", lambda params, tau2: 0.1)
    assert _run(tmp_path, "spectrum", "--preset", "fig3b") == 2
    assert "numerical failure" in capsys.readouterr().err


def test_selfcheck_passes_and_detects_fault(capsys):
    assert cli.main(["selfcheck"]) == 0
    assert "selfcheck: PASS" in capsys.readouterr().out
    assert cli.main(["selfcheck", "--perturb-coefficient", "1", "2"]) == 2
    out = capsys.readouterr().out
    assert "FAIL  generator vs Kronecker oracle" in out
    assert "FAIL  generator vs dbc-basis reconstruction" in out
    assert "selfcheck: FAIL" in out


def test_console_script_installed(tmp_path):
    exe = shutil.which("cpt-lab")
    if exe is None:
        pytest.skip("console script not on PATH")
    res = subprocess.run([exe, "spectrum", "--preset", "fig9", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 1 and "unknown preset" in res.stderr


def test_dynamics_rerun_is_byte_identical(tmp_path):
    text = "[dynamics]\npreset = fig2\nn_points = 200\nsmooth_window = 5\n"
    path = tmp_path / "dyn.ini"
    path.write_text(text)
    for d in ("a", "b"):
        assert cli.main(["dynamics", "--config", str(path), "--out", str(tmp_path / d)]) == 0
    for name in ("dynamics_tau_c-0.01.csv", "dynamics_tau_c-5.csv", "dynamics_rho00.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
