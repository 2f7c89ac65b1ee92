import json
import shutil
import subprocess

import numpy as np
import pytest

from twostate import checks, cli

WP_FAST = [
    "--energy", "1", "--potential", "2", "--sigma", "20", "--x0", "-100",
    "--half-domain", "300", "--points", "1025", "--dt", "0.4", "--steps", "370",
]


def _kv(out):
    pairs = {}
    for line in out.splitlines():
        if " = " in line:
            key, val = line.split(" = ", 1)
            pairs[key] = val
    return pairs


def test_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "tau.csv"
    rc = cli.main(["sweep", "tau_vs_energy", "--out", str(out), "--count", "11"])
    assert rc == 0
    assert str(out) in capsys.readouterr().out
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (11, 4)


def test_sweep_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cli.main(["sweep", "transmission", "--out", str(a), "--count", "11"])
    cli.main(["sweep", "transmission", "--out", str(b), "--count", "11"])
    assert a.read_bytes() == b.read_bytes()


def test_sweep_custom_series(tmp_path):
    out = tmp_path / "t.csv"
    rc = cli.main(
        ["sweep", "transmission", "--out", str(out), "--coupling", "1,2",
         "--count", "5"]
    )
    assert rc == 0
    header = out.read_text(encoding="utf-8").splitlines()[0]
    assert header == (
        "epsilon,transmission[coupling_sq=1],transmission[coupling_sq=4]"
    )


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "transmission", "--epsilon", "0.5"],
        ["sweep", "transmission", "--coupling", "1", "--coupling-sq", "1"],
        ["sweep", "tau_vs_coupling", "--coupling-sq", "1"],
        ["sweep", "tau_vs_energy"],  # no output path
    ],
)
def test_sweep_usage_errors(argv, tmp_path, capsys):
    if "--epsilon" in argv or "--coupling" in argv or "--coupling-sq" in argv:
        argv = argv + ["--out", str(tmp_path / "x.csv")]
    rc = cli.main(argv)
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_config_file_and_flag_precedence(tmp_path):
    out_cfg = tmp_path / "from_config.csv"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps({"count": 7, "out": str(out_cfg), "coupling-sq": [2.0]}),
        encoding="utf-8",
    )
    rc = cli.main(["sweep", "tau_vs_energy", "--config", str(cfg)])
    assert rc == 0
    assert np.loadtxt(out_cfg, delimiter=",", skiprows=1).shape == (7, 2)

    out_flag = tmp_path / "from_flag.csv"
    rc = cli.main(
        ["sweep", "tau_vs_energy", "--config", str(cfg), "--count", "5",
         "--out", str(out_flag)]
    )
    assert rc == 0
    assert np.loadtxt(out_flag, delimiter=",", skiprows=1).shape == (5, 2)


def test_verify_reports_pass(monkeypatch, capsys):
    fake = [checks.CheckResult("alpha", True, "fine")]
    monkeypatch.setattr(checks, "run_verification", lambda: fake)
    rc = cli.main(["verify"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "PASS alpha: fine" in out
    assert "all 1 checks passed" in out


def test_verify_reports_failure(monkeypatch, capsys):
    fake = [
        checks.CheckResult("alpha", True, "fine"),
        checks.CheckResult("beta", False, "broken"),
    ]
    monkeypatch.setattr(checks, "run_verification", lambda: fake)
    rc = cli.main(["verify"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL beta: broken" in out
    assert "1 of 2 checks failed: beta" in out


def test_wavepacket_free_run(capsys):
    rc = cli.main(["wavepacket", "--coupling", "0", *WP_FAST])
    out = capsys.readouterr().out
    assert rc == 0
    vals = _kv(out)
    assert float(vals["delay"]) == 0.0
    assert float(vals["transmitted_fraction"]) == pytest.approx(1.0, abs=1e-9)
    assert "analytic_transition_time" not in vals


def test_wavepacket_coupled_run(tmp_path, capsys):
    frames = tmp_path / "frames.csv"
    rc = cli.main(
        ["wavepacket", "--coupling", "1", "--snapshots", str(frames),
         "--stride", "100", *WP_FAST]
    )
    out = capsys.readouterr().out
    assert rc == 0
    vals = _kv(out)
    assert abs(float(vals["delay"])) <= 0.05
    assert float(vals["norm_drift"]) <= 1e-8
    assert float(vals["analytic_transition_time"]) == 0.0
    assert frames.read_text(encoding="utf-8").startswith("t,x,density1,density2\n")


def test_greens_defaults(capsys):
    rc = cli.main(["greens"])
    out = capsys.readouterr().out
    assert rc == 0
    vals = _kv(out)
    assert float(vals["greens_value"]) == pytest.approx(
        -0.7071067811865475, rel=1e-12
    )
    assert float(vals["effective_strength"]) == pytest.approx(
        0.7071067811865475, rel=1e-12
    )
    assert float(vals["oracle_gap"]) <= 1e-8


def test_greens_domain_error(capsys):
    rc = cli.main(["greens", "--energy", "2", "--potential", "1"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_console_script_installed():
    exe = shutil.which("twostate")
    assert exe is not None
    proc = subprocess.run(
        [exe, "greens"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0
    assert "greens_value" in proc.stdout
