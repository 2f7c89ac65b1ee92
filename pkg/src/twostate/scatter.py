"""Stationary scattering amplitudes for the point-coupled open channel.

After the closed channel is eliminated the open channel sees an energy
dependent point potential lambda(E) = k0^2 G(xc, xc) < 0.  Matching a unit
incident wave exp(i k x) against the jump condition

    phi'(xc+) - phi'(xc-) = (2 m / hbar^2) lambda phi(xc)

gives, for a coupling at the origin,

    transmission C = 1 / (1 + i m lambda / (hbar^2 k)),   reflection B = C - 1.

A coupling at xc /= 0 only multiplies the reflection amplitude by
exp(2 i k xc); probabilities and phases are unchanged.  The transmission
and reflection phases are reported on the principal arctan branch:

    phi_t = arctan(-m lambda / (hbar^2 k))   in (0, pi/2),
    phi_r = arctan(hbar^2 k / (m lambda))    in (-pi/2, 0),

so tan(phi_t) * tan(phi_r) = -1 identically.  Note phi_r differs from
arg(B) by a constant pi; energy derivatives are unaffected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .greens import greens_constant
from .params import (
    DegenerateCouplingError,
    DomainError,
    ModelParams,
    ReducedParams,
    wave_numbers,
)

__all__ = [
    "Amplitudes",
    "scattering_phases",
    "solve_amplitudes",
    "transmission_probability",
]


@dataclass(frozen=True)
class Amplitudes:
    """Complex amplitudes and derived observables of a scattering solution.

    reflection multiplies exp(-i k x) on the incident side, transmission
    multiplies exp(+i k x) on the far side.  reflection_phase is NaN in the
    degenerate uncoupled case k0 = 0 (no reflected wave to carry a phase).
    """

    reflection: complex
    transmission: complex
    transmission_prob: float
    reflection_prob: float
    transmission_phase: float
    reflection_phase: float


def solve_amplitudes(p: ModelParams) -> Amplitudes:
    """Solve the matching problem for a unit wave incident from the left."""
    if p.energy <= 0.0:
        raise DomainError("scattering requires energy > 0")
    kn = wave_numbers(p)
    if p.coupling == 0.0:
        return Amplitudes(
            reflection=0.0 + 0.0j,
            transmission=1.0 + 0.0j,
            transmission_prob=1.0,
            reflection_prob=0.0,
            transmission_phase=0.0,
            reflection_phase=math.nan,
        )
    lam = p.coupling**2 * greens_constant(p.center, p.center, p).value
    ratio = p.mass * lam / (p.hbar**2 * kn.k)  # negative in-regime
    transmission = 1.0 / (1.0 + 1j * ratio)
    reflection0 = transmission - 1.0
    reflection = reflection0 * cmath.exp(2j * kn.k * p.center)
    return Amplitudes(
        reflection=reflection,
        transmission=transmission,
        transmission_prob=abs(transmission) ** 2,
        reflection_prob=abs(reflection0) ** 2,
        transmission_phase=math.atan(-ratio),
        reflection_phase=math.atan(1.0 / ratio),
    )


def transmission_probability(r: ReducedParams) -> float:
    """Dimensionless transmission probability in the reduced convention.

    |T|^2 = 1 / (1 + k0^4 / (16 V^2 eps (1 - eps))); agrees with
    solve_amplitudes on the expanded parameters to rounding.
    """
    spread = 16.0 * r.potential**2 * r.epsilon * (1.0 - r.epsilon)
    return 1.0 / (1.0 + r.coupling**4 / spread)


def scattering_phases(p: ModelParams) -> tuple[float, float]:
    """Principal-branch transmission and reflection phases (phi_t, phi_r)."""
    if p.coupling == 0.0:
        raise DegenerateCouplingError(
            "reflection phase is undefined at zero coupling"
        )
    amps = solve_amplitudes(p)
    return amps.transmission_phase, amps.reflection_phase
