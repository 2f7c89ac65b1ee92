"""Exactly solvable two-channel scattering with a point inter-channel coupling.

An open channel at zero potential and a closed channel at a constant
potential above the incident energy exchange amplitude through a Dirac
point coupling.  Eliminating the closed channel through its Green's
function yields closed forms for the transmission and reflection
amplitudes, the tunneling-time taxonomy and the transition time, all of
which are cross-checked here by independent numerical oracles and a
time-dependent wave-packet experiment.
"""

from .greens import GreensValue, effective_strength, greens_constant
from .oracle import (
    ConvergenceReport,
    RegularizedSolution,
    convergence_study,
    dwell_time_regularized,
    dwell_time_window,
    extremum_search,
    fd_group_delay,
    greens_grid,
    greens_grid_extrapolated,
    solve_regularized,
)
from .params import (
    ConventionError,
    DegenerateCouplingError,
    DomainError,
    ModelParams,
    ReducedParams,
    WaveNumbers,
    expand_reduced,
    make_reduced,
    wave_numbers,
)
from .scatter import (
    Amplitudes,
    scattering_phases,
    solve_amplitudes,
    transmission_probability,
)
from .sweep import SweepSpec, SweepVariable, run_sweep
from .times import (
    TimeTaxonomy,
    extremal_coupling,
    group_delays,
    time_taxonomy,
    transition_time,
)
from .wavepacket import (
    BoundaryContaminationError,
    DelayResult,
    GridSpec,
    NormDriftError,
    PacketSpec,
    propagate,
)

__version__ = "0.1.0"

__all__ = [
    "Amplitudes",
    "BoundaryContaminationError",
    "ConvergenceReport",
    "ConventionError",
    "DegenerateCouplingError",
    "DelayResult",
    "DomainError",
    "GreensValue",
    "GridSpec",
    "ModelParams",
    "NormDriftError",
    "PacketSpec",
    "ReducedParams",
    "RegularizedSolution",
    "SweepSpec",
    "SweepVariable",
    "TimeTaxonomy",
    "WaveNumbers",
    "convergence_study",
    "dwell_time_regularized",
    "dwell_time_window",
    "effective_strength",
    "expand_reduced",
    "extremal_coupling",
    "extremum_search",
    "fd_group_delay",
    "greens_constant",
    "greens_grid",
    "greens_grid_extrapolated",
    "group_delays",
    "make_reduced",
    "propagate",
    "run_sweep",
    "scattering_phases",
    "solve_amplitudes",
    "solve_regularized",
    "time_taxonomy",
    "transition_time",
    "transmission_probability",
    "wave_numbers",
]
