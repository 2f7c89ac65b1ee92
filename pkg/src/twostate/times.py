"""Tunneling-time taxonomy and the closed-form transition time.

A point coupling has zero spatial support, so the dwell time and the
absorption time vanish identically and the self-interference delay equals
the group delay:

    tau_dwell = tau_absorption = 0,     tau_self = tau_group.

The group delay is the energy derivative of the transmission phase,

    tau_gt = hbar * d(phi_t)/dE
           = m hbar^3 k0^2 (2E - V)
             / (sqrt(E) sqrt(V - E) (4 hbar^4 E (V - E) + k0^4 m^2)),

identical for transmission and reflection because the effective potential
is real and symmetric.  In the reduced convention (hbar = 1, m = 1/2,
eps = E/V) the same quantity reads

    tau = 2 (2 eps - 1) / (sqrt(eps) sqrt(1 - eps)
          * (k0^2 + 16 eps (1 - eps) V^2 / k0^2)),

negative below eps = 1/2 (transmission speeds up), zero at eps = 1/2,
positive above, and antisymmetric under eps -> 1 - eps.  At fixed eps the
magnitude is extremal at k0^2 = 4 V sqrt(eps (1 - eps)) where it equals
(2 eps - 1) / (4 V eps (1 - eps)).  Negative values are physical and are
never clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import scatter
from .params import (
    DegenerateCouplingError,
    DomainError,
    ModelParams,
    ReducedParams,
)

__all__ = [
    "TimeTaxonomy",
    "extremal_coupling",
    "group_delays",
    "time_taxonomy",
    "transition_time",
]


@dataclass(frozen=True)
class TimeTaxonomy:
    """All characteristic times of one scattering configuration."""

    dwell: float
    absorption: float
    group_delay: float
    self_interference: float
    transmission_delay: float
    reflection_delay: float
    transition: float


def _require_scattering(p: ModelParams) -> None:
    if p.energy <= 0.0:
        raise DomainError("delays require energy > 0")
    if p.coupling == 0.0:
        raise DegenerateCouplingError("delays are degenerate at zero coupling")


def group_delays(p: ModelParams) -> tuple[float, float, float]:
    """(tau_gt, tau_gr, tau_g): transmission, reflection and mean group delay.

    tau_gt comes from the closed-form phase derivative above, tau_gr equals
    it, and tau_g is the probability-weighted combination
    T2 * tau_gt + R2 * tau_gr, numerically indistinguishable from tau_gt.
    """
    _require_scattering(p)
    e, v, k0, m, hb = p.energy, p.potential, p.coupling, p.mass, p.hbar
    numer = m * hb**3 * k0**2 * (2.0 * e - v)
    denom = (
        math.sqrt(e)
        * math.sqrt(v - e)
        * (4.0 * hb**4 * e * (v - e) + k0**4 * m**2)
    )
    tau_gt = numer / denom
    tau_gr = tau_gt
    amps = scatter.solve_amplitudes(p)
    tau_g = amps.transmission_prob * tau_gt + amps.reflection_prob * tau_gr
    return tau_gt, tau_gr, tau_g


def time_taxonomy(p: ModelParams) -> TimeTaxonomy:
    """Full taxonomy; dwell and absorption are exactly zero by construction."""
    tau_gt, tau_gr, tau_g = group_delays(p)
    return TimeTaxonomy(
        dwell=0.0,
        absorption=0.0,
        group_delay=tau_g,
        self_interference=tau_g,
        transmission_delay=tau_gt,
        reflection_delay=tau_gr,
        transition=tau_g,
    )


def transition_time(r: ReducedParams) -> float:
    """Closed-form reduced transition time tau(eps, V, k0)."""
    if r.coupling == 0.0:
        raise DegenerateCouplingError(
            "transition time is degenerate at zero coupling"
        )
    eps, v = r.epsilon, r.potential
    ksq = r.coupling**2
    numer = 2.0 * (2.0 * eps - 1.0)
    denom = (
        math.sqrt(eps)
        * math.sqrt(1.0 - eps)
        * (ksq + 16.0 * eps * (1.0 - eps) * v**2 / ksq)
    )
    return numer / denom


def extremal_coupling(epsilon: float, potential: float) -> tuple[float, float]:
    """Coupling k0^2 that extremizes |tau| at fixed epsilon, and tau there.

    Returns (k0_sq_star, tau_star) with k0_sq_star = 4 V sqrt(eps (1-eps))
    and tau_star = (2 eps - 1) / (4 V eps (1 - eps)).  epsilon = 1/2 is
    degenerate (tau vanishes for every coupling) and is rejected.
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if potential <= 0.0:
        raise DomainError(f"potential must be positive, got {potential}")
    if epsilon == 0.5:
        raise ValueError(
            "transition time vanishes identically at epsilon = 1/2; "
            "no extremal coupling exists"
        )
    k0_sq_star = 4.0 * potential * math.sqrt(epsilon * (1.0 - epsilon))
    tau_star = (2.0 * epsilon - 1.0) / (
        4.0 * potential * epsilon * (1.0 - epsilon)
    )
    return k0_sq_star, tau_star
