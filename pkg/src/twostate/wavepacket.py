"""Time-dependent arrival-delay measurement with narrow-band packets.

A Gaussian packet in the open channel is propagated through the square
regularized coupling with an implicit Crank-Nicolson step.  The Cayley
form (I + i dt H / 2 hbar)^-1 (I - i dt H / 2 hbar) is unitary for the
Hermitian discrete Hamiltonian, so the norm is conserved to rounding
(well below 1e-8 per step in the free case).  Both channels share a
uniform grid; the coupling enters as its cell average, which represents
strips far narrower than the grid spacing without resolving them.

The arrival time is the instant the centroid of the transmitted density
(open channel restricted to the far side of the strip) crosses the
detector plane at half the domain radius.  A free run with the coupling
switched off on the same grid supplies the reference; the reported delay
is the difference and converges to the analytic group delay in the
narrow-band limit, with a finite-bandwidth bias well inside 25%.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import diags, identity
from scipy.sparse.linalg import splu

from .params import DomainError, ModelParams

__all__ = [
    "BoundaryContaminationError",
    "DelayResult",
    "GridSpec",
    "NormDriftError",
    "PacketSpec",
    "propagate",
]

_EDGE_TOL = 1e-8
_DRIFT_TOL = 1e-6
_MASS_FLOOR = 1e-3


class BoundaryContaminationError(RuntimeError):
    """Probability density reached the grid edge above tolerance."""


class NormDriftError(RuntimeError):
    """Total norm drifted beyond tolerance during the run."""


@dataclass(frozen=True)
class PacketSpec:
    """Gaussian open-channel packet exp(-(x-center)^2/(4 sigma^2) + i kbar x).

    center must sit on the incident side (negative) at least five widths
    from the coupling so the initial overlap with the strip is negligible.
    """

    center: float
    wavenumber: float
    sigma: float

    def __post_init__(self) -> None:
        if not all(
            math.isfinite(v) for v in (self.center, self.wavenumber, self.sigma)
        ):
            raise ValueError("packet parameters must be finite")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.wavenumber <= 0.0:
            raise ValueError(
                f"wavenumber must be positive, got {self.wavenumber}"
            )
        if self.center >= 0.0:
            raise ValueError("packet must start on the incident side (center < 0)")
        if abs(self.center) < 5.0 * self.sigma:
            raise ValueError("packet must start at least 5 sigma from the coupling")

    @classmethod
    def for_energy(
        cls, energy: float, p: ModelParams, sigma: float, center: float
    ) -> "PacketSpec":
        """Packet whose carrier wavenumber matches a target central energy."""
        if energy <= 0.0:
            raise DomainError("packet energy must be positive")
        kbar = math.sqrt(2.0 * p.mass * energy) / p.hbar
        return cls(center=center, wavenumber=kbar, sigma=sigma)

    def central_energy(self, p: ModelParams) -> float:
        return (p.hbar * self.wavenumber) ** 2 / (2.0 * p.mass)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid [-half_length, half_length] with fixed step count."""

    half_length: float
    points: int = 2048
    dt: float = 0.25
    steps: int = 2000

    def __post_init__(self) -> None:
        if self.half_length <= 0.0:
            raise ValueError("half_length must be positive")
        if self.points < 128:
            raise ValueError("need at least 128 grid points")
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.steps < 1:
            raise ValueError("steps must be at least 1")


@dataclass(frozen=True)
class DelayResult:
    """Measured arrival times and their difference."""

    t_arrival: float
    t_free: float
    delay: float
    norm_drift: float
    transmitted_fraction: float


def _coupling_cells(x: np.ndarray, dx: float, p: ModelParams, width: float):
    """Cell-averaged square coupling; integral over the grid equals k0."""
    if p.coupling == 0.0:
        return np.zeros_like(x)
    lo = p.center - width / 2.0
    hi = p.center + width / 2.0
    left = x - dx / 2.0
    right = x + dx / 2.0
    overlap = np.clip(np.minimum(right, hi) - np.maximum(left, lo), 0.0, None)
    return (p.coupling / width) * overlap / dx


def _propagator(x: np.ndarray, dx: float, gvec: np.ndarray, p: ModelParams, dt: float):
    """Factorized Crank-Nicolson operators on the interleaved 2N state."""
    n = x.size
    t = p.hbar**2 / (2.0 * p.mass * dx**2)
    main = np.empty(2 * n)
    main[0::2] = 2.0 * t
    main[1::2] = 2.0 * t + p.potential
    off1 = np.zeros(2 * n - 1)
    off1[0::2] = gvec  # couples phi1(i) with phi2(i) only
    off2 = np.full(2 * n - 2, -t)
    ham = diags(
        [off2, off1, main, off1, off2], offsets=[-2, -1, 0, 1, 2], format="csr"
    )
    lam = 1j * dt / (2.0 * p.hbar)
    one = identity(2 * n, dtype=complex, format="csr")
    forward = (one - lam * ham).tocsr()
    backward = splu((one + lam * ham).tocsc())
    return forward, backward


def _run(
    psi: np.ndarray,
    x: np.ndarray,
    dx: float,
    gvec: np.ndarray,
    p: ModelParams,
    grid: GridSpec,
    mask: np.ndarray,
    snapshot=None,
):
    """Propagate one configuration, recording the restricted centroid."""
    forward, backward = _propagator(x, dx, gvec, p, grid.dt)
    xm = x[mask]
    times_out = np.empty(grid.steps + 1)
    cents = np.full(grid.steps + 1, np.nan)
    drift = 0.0

    def observe(step: int, state: np.ndarray) -> None:
        nonlocal drift
        t = step * grid.dt
        times_out[step] = t
        dens1 = np.abs(state[0::2]) ** 2
        dens2 = np.abs(state[1::2]) ** 2
        norm = (dens1.sum() + dens2.sum()) * dx
        drift = max(drift, abs(norm - 1.0))
        if drift > _DRIFT_TOL:
            raise NormDriftError(
                f"norm drifted by {drift:.3e} at t={t} (tolerance {_DRIFT_TOL})"
            )
        edge = max(dens1[0] + dens2[0], dens1[-1] + dens2[-1])
        if edge > _EDGE_TOL:
            raise BoundaryContaminationError(
                f"edge density {edge:.3e} exceeds {_EDGE_TOL} at t={t}; "
                "enlarge the domain or shorten the run"
            )
        mass = dens1[mask].sum() * dx
        if mass > _MASS_FLOOR:
            cents[step] = (xm * dens1[mask]).sum() * dx / mass
        if snapshot is not None and step % snapshot[1] == 0:
            fh = snapshot[0]
            block = np.column_stack(
                (np.full(x.size, t), x, dens1, dens2)
            )
            np.savetxt(fh, block, fmt="%.15g", delimiter=",")

    observe(0, psi)
    for step in range(1, grid.steps + 1):
        psi = backward.solve(forward @ psi)
        observe(step, psi)

    dens1 = np.abs(psi[0::2]) ** 2
    transmitted = float(dens1[mask].sum() * dx)
    return times_out, cents, drift, transmitted


def _crossing_time(ts: np.ndarray, cs: np.ndarray, plane: float) -> float:
    """First linear-interpolated crossing of the detector plane."""
    valid = np.isfinite(cs)
    for i in range(1, ts.size):
        if not (valid[i - 1] and valid[i]):
            continue
        if cs[i - 1] < plane <= cs[i]:
            frac = (plane - cs[i - 1]) / (cs[i] - cs[i - 1])
            return float(ts[i - 1] + frac * (ts[i] - ts[i - 1]))
    raise RuntimeError(
        "transmitted centroid never crossed the detector plane; "
        "increase grid.steps or enlarge the domain"
    )


def propagate(
    packet: PacketSpec,
    p: ModelParams,
    width: float,
    grid: GridSpec,
    snapshot_path: str | Path | None = None,
    snapshot_stride: int = 50,
) -> DelayResult:
    """Measure the coupling-induced arrival delay at the detector plane.

    Runs the coupled configuration and a free reference on the same grid
    and returns the centroid-crossing delay, the worst norm drift of the
    coupled run and the transmitted fraction at the end of the run.  When
    ``snapshot_path`` is given, rows (t, x, |phi1|^2, |phi2|^2) of the
    coupled run are dumped every ``snapshot_stride`` steps.
    """
    if width <= 0.0 or width > 1e-2:
        raise ValueError(
            f"regularization width must lie in (0, 1e-2], got {width!r}"
        )
    e0 = packet.central_energy(p)
    if e0 >= p.potential:
        raise DomainError(
            f"packet central energy {e0} must stay below the threshold "
            f"{p.potential}"
        )
    spread = p.hbar**2 * packet.wavenumber / (p.mass * packet.sigma)
    budget = 0.1 * min(e0, p.potential - e0)
    if spread > budget:
        raise ValueError(
            f"packet too broadband: energy spread {spread:.3e} exceeds "
            f"0.1 * min(E0, V - E0) = {budget:.3e}; widen sigma"
        )
    if snapshot_stride < 1:
        raise ValueError("snapshot stride must be >= 1")

    x = np.linspace(-grid.half_length, grid.half_length, grid.points)
    dx = float(x[1] - x[0])
    mask = x > p.center + width / 2.0
    plane = grid.half_length / 2.0

    envelope = np.exp(-((x - packet.center) ** 2) / (4.0 * packet.sigma**2))
    psi0 = np.zeros(2 * grid.points, dtype=complex)
    psi0[0::2] = envelope * np.exp(1j * packet.wavenumber * x)
    psi0 /= math.sqrt(float(np.sum(np.abs(psi0) ** 2)) * dx)

    gvec = _coupling_cells(x, dx, p, width)
    snapshot = None
    handle = None
    try:
        if snapshot_path is not None:
            handle = open(snapshot_path, "w", encoding="utf-8", newline="\n")
            handle.write("t,x,density1,density2\n")
            snapshot = (handle, snapshot_stride)
        ts, cs, drift, transmitted = _run(
            psi0.copy(), x, dx, gvec, p, grid, mask, snapshot
        )
    finally:
        if handle is not None:
            handle.close()

    zero = np.zeros_like(gvec)
    ts_free, cs_free, _, _ = _run(psi0.copy(), x, dx, zero, p, grid, mask, None)

    t_arrival = _crossing_time(ts, cs, plane)
    t_free = _crossing_time(ts_free, cs_free, plane)
    return DelayResult(
        t_arrival=t_arrival,
        t_free=t_free,
        delay=t_arrival - t_free,
        norm_drift=drift,
        transmitted_fraction=transmitted,
    )
