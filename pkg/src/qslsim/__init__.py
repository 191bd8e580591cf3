"""Dissipative qubit dynamics, reservoir bound states, and speed-limit times.

One probe qubit shares a zero-temperature bosonic reservoir with N-1
non-interacting spectator qubits.  The package computes the probe's
excited-state amplitude (closed form for Lorentzian reservoirs, Volterra
integro-differential solver otherwise), locates the negative-energy
bound state of the joint spectrum, and evaluates the quantum-speed-limit
time of the probe evolution, with sweep tables and figures over coupling
strength and qubit number.
"""

from .boundstate import (
    BoundStateResult,
    bound_energy_scan,
    bound_state_exists,
    find_bound_state,
    ohmic_critical_coupling,
    y_of,
)
from .dynamics import (
    AmplitudeTrajectory,
    DecayRateSeries,
    SimulationConfig,
    VectorAmplitudes,
    analytic_trajectory,
    decay_rate,
    lorentzian_propagator,
    solve_amplitude,
    solve_amplitude_vector,
)
from .errors import (
    BracketExpansionError,
    NumericError,
    QuadratureError,
    UnstableStepError,
)
from .qsl import QslResult, bures_angle, qsl_sweep, qsl_time
from .spectral import (
    KernelValue,
    Lorentzian,
    Ohmic,
    SpectralDensity,
    correlation_kernel,
    correlation_kernel_quadrature,
    coupling_of,
    evaluate_density,
    with_coupling,
)
from .tables import SweepTable

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTrajectory",
    "BoundStateResult",
    "BracketExpansionError",
    "DecayRateSeries",
    "KernelValue",
    "Lorentzian",
    "NumericError",
    "Ohmic",
    "QslResult",
    "QuadratureError",
    "SimulationConfig",
    "SpectralDensity",
    "SweepTable",
    "UnstableStepError",
    "VectorAmplitudes",
    "analytic_trajectory",
    "bound_energy_scan",
    "bound_state_exists",
    "bures_angle",
    "correlation_kernel",
    "correlation_kernel_quadrature",
    "coupling_of",
    "decay_rate",
    "evaluate_density",
    "find_bound_state",
    "lorentzian_propagator",
    "ohmic_critical_coupling",
    "qsl_sweep",
    "qsl_time",
    "solve_amplitude",
    "solve_amplitude_vector",
    "with_coupling",
    "y_of",
]
