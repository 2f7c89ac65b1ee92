import math

import numpy as np
import pytest

from twostate import ReducedParams, SweepSpec, SweepVariable, run_sweep, transition_time
from twostate.sweep import QUANTITIES, default_spec


def _rows(path):
    return np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


def test_default_specs_are_well_formed(tmp_path):
    for q in QUANTITIES:
        spec = default_spec(q, tmp_path / f"{q}.csv")
        assert spec.quantity == q
        assert spec.variable.count == 999
        if q == "tau_vs_coupling":
            assert spec.variable.name == "coupling_sq"
            assert spec.fixed["epsilon"] == (0.6, 0.7, 0.8, 0.9)
        else:
            assert spec.variable.name == "epsilon"
    with pytest.raises(ValueError):
        default_spec("bogus", tmp_path / "x.csv")


def test_csv_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_sweep(default_spec("transmission", a))
    run_sweep(default_spec("transmission", b))
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text(encoding="utf-8")
    assert "\r" not in text
    assert text.endswith("\n")


def test_csv_header_and_shape(tmp_path):
    path = tmp_path / "t.csv"
    run_sweep(default_spec("transmission", path))
    header = path.read_text(encoding="utf-8").splitlines()[0]
    cols = header.split(",")
    assert cols[0] == "epsilon"
    assert len(cols) == 4
    assert all(c.startswith("transmission[coupling_sq=") for c in cols[1:])
    data = _rows(path)
    assert data.shape == (999, 4)
    assert data[0, 0] == pytest.approx(1e-4, rel=1e-12)
    assert data[-1, 0] == pytest.approx(1.0 - 1e-4, rel=1e-12)


def test_single_series_label(tmp_path):
    path = tmp_path / "p.csv"
    run_sweep(default_spec("phase", path))
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header == "epsilon,phase"


def test_values_match_closed_form(tmp_path):
    path = tmp_path / "tau.csv"
    spec = SweepSpec(
        quantity="tau_vs_coupling",
        variable=SweepVariable("coupling_sq", 0.5, 4.0, 8),
        fixed={"potential": 1.0, "epsilon": (0.75,)},
        output=path,
    )
    run_sweep(spec)
    data = _rows(path)
    for ksq, tau in data:
        expected = transition_time(ReducedParams(0.75, 1.0, math.sqrt(ksq)))
        assert tau == pytest.approx(expected, rel=1e-12)


def test_fifteen_digit_roundtrip(tmp_path):
    path = tmp_path / "tau.csv"
    spec = SweepSpec(
        quantity="tau_vs_energy",
        variable=SweepVariable("epsilon", 0.25, 0.25, 2),
        fixed={"potential": 1.0, "coupling_sq": 1.0},
        output=path,
    )
    with pytest.raises(ValueError):
        run_sweep(spec)  # degenerate range
    spec = SweepSpec(
        quantity="tau_vs_energy",
        variable=SweepVariable("epsilon", 0.25, 0.75, 3),
        fixed={"potential": 1.0, "coupling_sq": 1.0},
        output=path,
    )
    run_sweep(spec)
    line = path.read_text(encoding="utf-8").splitlines()[1]
    assert line.split(",")[1] == "-0.577350269189626"


def test_margin_clips_open_interval(tmp_path):
    path = tmp_path / "wide.csv"
    spec = SweepSpec(
        quantity="tau_vs_energy",
        variable=SweepVariable("epsilon", 0.0, 1.0, 11),
        fixed={"potential": 1.0, "coupling_sq": 1.0},
        output=path,
        margin=1e-3,
    )
    run_sweep(spec)
    data = _rows(path)
    assert data[0, 0] == pytest.approx(1e-3, rel=1e-12)
    assert data[-1, 0] == pytest.approx(1.0 - 1e-3, rel=1e-12)


def test_svg_structure(tmp_path):
    path = tmp_path / "t.svg"
    run_sweep(default_spec("transmission", path, fmt="svg"))
    text = path.read_text(encoding="utf-8")
    assert text.startswith("<svg ")
    assert text.endswith("</svg>\n")
    assert text.count("<polyline ") == 3
    assert "\r" not in text


def test_both_formats(tmp_path):
    out = tmp_path / "t.csv"
    written = run_sweep(default_spec("tau_vs_energy", out, fmt="both"))
    assert sorted(p.suffix for p in written) == [".csv", ".svg"]
    for p in written:
        assert p.exists()


def test_run_sweep_validation(tmp_path):
    good = SweepVariable("epsilon", 0.1, 0.9, 5)
    out = tmp_path / "x.csv"
    with pytest.raises(ValueError):
        run_sweep(SweepSpec("bogus", good, {"coupling_sq": 1.0}, out))
    with pytest.raises(ValueError):
        run_sweep(
            SweepSpec(
                "transmission",
                SweepVariable("coupling_sq", 0.1, 1.0, 5),
                {"coupling_sq": 1.0},
                out,
            )
        )
    with pytest.raises(ValueError):
        run_sweep(
            SweepSpec("transmission", good, {"coupling_sq": 1.0}, out, format="png")
        )
    with pytest.raises(ValueError):
        run_sweep(
            SweepSpec("transmission", good, {"coupling_sq": 1.0}, out, margin=0.7)
        )
    with pytest.raises(ValueError):
        run_sweep(SweepSpec("transmission", good, {"potential": 1.0}, out))
    with pytest.raises(ValueError):
        SweepVariable("epsilon", 0.1, 0.9, 1)
    with pytest.raises(ValueError):
        SweepVariable("epsilon", math.nan, 0.9, 5)
