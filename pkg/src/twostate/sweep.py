"""Parameter sweeps emitted as deterministic CSV tables and SVG plots.

Four quantities are supported, mirroring the observables of the model:

* ``transmission``  |T|^2 against epsilon, one series per coupling
* ``phase``         transmission phase against epsilon
* ``tau_vs_energy`` transition time against epsilon
* ``tau_vs_coupling`` transition time against k0^2

Numbers are printed with 15 significant digits and LF line endings, so a
given spec always produces byte-identical files.  Open domain endpoints
are clipped by a configurable margin (default 1e-4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import scatter, times
from .params import ReducedParams, expand_reduced

__all__ = ["SweepSpec", "SweepVariable", "run_sweep"]

QUANTITIES = ("transmission", "phase", "tau_vs_energy", "tau_vs_coupling")

_COLUMN = {
    "transmission": "transmission",
    "phase": "phase",
    "tau_vs_energy": "tau",
    "tau_vs_coupling": "tau",
}
_VARIABLE = {
    "transmission": "epsilon",
    "phase": "epsilon",
    "tau_vs_energy": "epsilon",
    "tau_vs_coupling": "coupling_sq",
}
_SERIES = {
    "transmission": "coupling_sq",
    "phase": "coupling_sq",
    "tau_vs_energy": "coupling_sq",
    "tau_vs_coupling": "epsilon",
}

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")


@dataclass(frozen=True)
class SweepVariable:
    """Linearly spaced sweep variable."""

    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 2:
            raise ValueError(f"count must be at least 2, got {self.count}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("sweep bounds must be finite")


@dataclass(frozen=True)
class SweepSpec:
    """Complete description of one sweep artifact."""

    quantity: str
    variable: SweepVariable
    fixed: Mapping[str, float | Sequence[float]]
    output: Path
    format: str = "csv"
    margin: float = 1e-4


def default_spec(quantity: str, output: Path, fmt: str = "csv") -> SweepSpec:
    """Sweep specs reproducing the canonical figures of the model."""
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}")
    margin = 1e-4
    potential = 1.0
    if quantity == "tau_vs_coupling":
        variable = SweepVariable("coupling_sq", margin, 10.0, 999)
        fixed = {"potential": potential, "epsilon": (0.6, 0.7, 0.8, 0.9)}
    else:
        variable = SweepVariable("epsilon", margin, 1.0 - margin, 999)
        if quantity == "transmission":
            series = tuple(
                potential * math.sqrt(q) for q in (0.4, 4.0, 40.0)
            )  # k0^4 / V^2 in {0.4, 4, 40}
        elif quantity == "phase":
            series = (4.0 * potential,)  # k0^2 / (4 V) = 1
        else:
            series = (0.5, 1.0, 2.0)
        fixed = {"potential": potential, "coupling_sq": series}
    return SweepSpec(
        quantity=quantity,
        variable=variable,
        fixed=fixed,
        output=Path(output),
        format=fmt,
        margin=margin,
    )


def _series_values(spec: SweepSpec) -> tuple[float, ...]:
    raw = spec.fixed.get(_SERIES[spec.quantity])
    if raw is None:
        raise ValueError(
            f"sweep over {spec.quantity!r} needs fixed "
            f"{_SERIES[spec.quantity]!r} value(s)"
        )
    if isinstance(raw, (int, float)):
        return (float(raw),)
    vals = tuple(float(v) for v in raw)
    if not vals:
        raise ValueError("series parameter list is empty")
    return vals


def _clip_grid(spec: SweepSpec) -> np.ndarray:
    lo, hi = spec.variable.start, spec.variable.stop
    if spec.variable.name == "epsilon":
        lo = max(lo, spec.margin)
        hi = min(hi, 1.0 - spec.margin)
    else:
        lo = max(lo, spec.margin)
    if not lo < hi:
        raise ValueError(
            f"empty sweep range after clipping: [{lo}, {hi}] for "
            f"{spec.variable.name}"
        )
    return np.linspace(lo, hi, spec.variable.count)


def _evaluate(spec: SweepSpec, grid: np.ndarray, series: tuple[float, ...]):
    potential = float(spec.fixed.get("potential", 1.0))
    columns: list[np.ndarray] = []
    for s in series:
        out = np.empty(grid.size)
        for i, v in enumerate(grid):
            if spec.variable.name == "epsilon":
                r = ReducedParams(
                    epsilon=float(v),
                    potential=potential,
                    coupling=math.sqrt(s),
                )
            else:
                r = ReducedParams(
                    epsilon=s, potential=potential, coupling=math.sqrt(float(v))
                )
            if spec.quantity == "transmission":
                out[i] = scatter.transmission_probability(r)
            elif spec.quantity == "phase":
                out[i] = scatter.scattering_phases(expand_reduced(r))[0]
            else:
                out[i] = times.transition_time(r)
        columns.append(out)
    return columns


def _labels(spec: SweepSpec, series: tuple[float, ...]) -> list[str]:
    base = _COLUMN[spec.quantity]
    if len(series) == 1:
        return [base]
    key = _SERIES[spec.quantity]
    return [f"{base}[{key}={v:.6g}]" for v in series]


def _csv_text(grid, columns, labels, varname) -> str:
    lines = [",".join([varname, *labels])]
    for i in range(grid.size):
        cells = [f"{grid[i]:.15g}"]
        cells.extend(f"{col[i]:.15g}" for col in columns)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _svg_text(grid, columns, labels, varname, colname) -> str:
    width, height = 800.0, 600.0
    left, right, top, bottom = 90.0, 770.0, 30.0, 540.0
    xmin, xmax = float(grid.min()), float(grid.max())
    ymin = min(float(c.min()) for c in columns)
    ymax = max(float(c.max()) for c in columns)
    if ymax == ymin:
        ymin -= 0.5
        ymax += 0.5

    def px(v: float) -> float:
        return left + (v - xmin) / (xmax - xmin) * (right - left)

    def py(v: float) -> float:
        return bottom - (v - ymin) / (ymax - ymin) * (bottom - top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{left:.1f}" y1="{bottom:.1f}" x2="{right:.1f}" '
        f'y2="{bottom:.1f}" stroke="black" stroke-width="1"/>',
        f'<line x1="{left:.1f}" y1="{bottom:.1f}" x2="{left:.1f}" '
        f'y2="{top:.1f}" stroke="black" stroke-width="1"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = xmin + frac * (xmax - xmin)
        yv = ymin + frac * (ymax - ymin)
        parts.append(
            f'<text x="{px(xv):.1f}" y="{bottom + 20.0:.1f}" font-size="12" '
            f'text-anchor="middle">{xv:.6g}</text>'
        )
        parts.append(
            f'<text x="{left - 8.0:.1f}" y="{py(yv) + 4.0:.1f}" font-size="12" '
            f'text-anchor="end">{yv:.6g}</text>'
        )
    parts.append(
        f'<text x="{(left + right) / 2.0:.1f}" y="{height - 14.0:.1f}" '
        f'font-size="14" text-anchor="middle">{varname}</text>'
    )
    parts.append(
        f'<text x="20" y="{(top + bottom) / 2.0:.1f}" font-size="14" '
        f'text-anchor="middle" transform="rotate(-90 20 '
        f'{(top + bottom) / 2.0:.1f})">{colname}</text>'
    )
    for idx, (col, label) in enumerate(zip(columns, labels)):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(
            f"{px(float(grid[i])):.2f},{py(float(col[i])):.2f}"
            for i in range(grid.size)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{pts}"/>'
        )
        parts.append(
            f'<text x="{right - 6.0:.1f}" y="{top + 16.0 + 16.0 * idx:.1f}" '
            f'font-size="12" text-anchor="end" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def run_sweep(spec: SweepSpec) -> list[Path]:
    """Evaluate the sweep and write the requested artifact files."""
    if spec.quantity not in QUANTITIES:
        raise ValueError(
            f"unknown quantity {spec.quantity!r}; choose from {QUANTITIES}"
        )
    if spec.variable.name != _VARIABLE[spec.quantity]:
        raise ValueError(
            f"quantity {spec.quantity!r} sweeps {_VARIABLE[spec.quantity]!r}, "
            f"got variable {spec.variable.name!r}"
        )
    if spec.format not in ("csv", "svg", "both"):
        raise ValueError(f"format must be csv, svg or both, got {spec.format!r}")
    if not 0.0 < spec.margin < 0.5:
        raise ValueError(f"margin must lie in (0, 0.5), got {spec.margin}")

    series = _series_values(spec)
    grid = _clip_grid(spec)
    columns = _evaluate(spec, grid, series)
    labels = _labels(spec, series)

    out = Path(spec.output)
    written: list[Path] = []
    if spec.format in ("csv", "both"):
        path = out.with_suffix(".csv") if spec.format == "both" else out
        path.write_text(
            _csv_text(grid, columns, labels, spec.variable.name),
            encoding="utf-8",
            newline="\n",
        )
        written.append(path)
    if spec.format in ("svg", "both"):
        path = out.with_suffix(".svg") if spec.format == "both" else out
        path.write_text(
            _svg_text(
                grid, columns, labels, spec.variable.name, _COLUMN[spec.quantity]
            ),
            encoding="utf-8",
            newline="\n",
        )
        written.append(path)
    return written
