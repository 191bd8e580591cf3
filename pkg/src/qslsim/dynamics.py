"""Excited-state amplitude of the probe qubit.

All N qubits couple identically to the reservoir, so every amplitude
obeys the same memory integral over the sum of amplitudes.  With
u(t) = sum_m C_m(t) the dynamics collapses exactly to the scalar
Volterra integro-differential equation

    du/dt = -N * int_0^t f(t - s) u(s) ds,       u(0) = 1,

and the probe amplitude is recovered as C_1(t) = 1 + (u(t) - 1)/N.
The solver integrates this with a trapezoidal product-integration
predictor-corrector (one correction pass, globally second order);
solve_amplitude_vector integrates the unreduced N-component system and
exists to cross-check the reduction.  For Lorentzian reservoirs the
closed-form propagator is available and serves as the accuracy oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import UnstableStepError
from .spectral import Lorentzian, SpectralDensity, correlation_kernel

TRAJECTORY_COLUMNS = ("t", "re_c1", "im_c1", "population")

_MAX_GRID_POINTS = 10_000_000


@dataclass(frozen=True)
class SimulationConfig:
    """Grid and tolerance settings for one amplitude integration."""

    n_qubits: int
    sd: SpectralDensity
    horizon: float = 10.0
    step: float = 1e-3
    solver_tol: float = 1e-8

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"invariant violated: n_qubits >= 1 (got {self.n_qubits})")
        if self.horizon <= 0:
            raise ValueError(f"invariant violated: horizon > 0 (got {self.horizon})")
        if not 0 < self.step <= self.horizon / 10.0:
            raise ValueError(
                f"invariant violated: 0 < step <= horizon/10 "
                f"(got step={self.step}, horizon={self.horizon})"
            )
        if self.horizon / self.step > _MAX_GRID_POINTS:
            raise ValueError(
                f"invariant violated: horizon/step <= {_MAX_GRID_POINTS} "
                f"(got {self.horizon / self.step:.3g})"
            )
        if self.solver_tol <= 0:
            raise ValueError(f"invariant violated: solver_tol > 0 (got {self.solver_tol})")

    def grid(self) -> np.ndarray:
        """Uniform time grid covering [0, horizon]."""
        n = round(self.horizon / self.step)
        return np.linspace(0.0, self.horizon, n + 1)


@dataclass(frozen=True)
class AmplitudeTrajectory:
    """Sampled probe amplitude C_1(t) with its population |C_1|^2."""

    times: np.ndarray
    c1: np.ndarray
    population: np.ndarray
    method: str  # "analytic" | "volterra"

    def __post_init__(self):
        if not (len(self.times) == len(self.c1) == len(self.population)):
            raise ValueError("times, c1 and population must have equal length")
        if abs(self.c1[0] - 1.0) > 1e-9:
            raise ValueError(f"c1[0] must be 1 (probe initially excited), got {self.c1[0]}")
        if self.method not in ("analytic", "volterra"):
            raise ValueError(f"unknown method {self.method!r}")

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def to_csv(self) -> str:
        lines = [",".join(TRAJECTORY_COLUMNS)]
        for t, c, p in zip(self.times, self.c1, self.population):
            lines.append(
                f"{float(t)!r},{float(c.real)!r},{float(c.imag)!r},{float(p)!r}"
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_csv(), newline="\n")
        return path


@dataclass(frozen=True)
class VectorAmplitudes:
    """All N amplitudes from the unreduced system; amplitudes[i, l] = C_{l+1}(t_i)."""

    times: np.ndarray
    amplitudes: np.ndarray


@dataclass(frozen=True)
class DecayRateSeries:
    """Time-local decay rate -Re(dC_1/dt / C_1); truncated marks an early stop."""

    times: np.ndarray
    gamma: np.ndarray
    truncated: bool


def lorentzian_propagator(n_qubits: int, gamma0: float, lam: float, t):
    """Closed-form survival amplitude for the Lorentzian reservoir.

    Evaluated in complex arithmetic so the monotone (D real), oscillatory
    (D imaginary) and degenerate (D = 0) regimes share one expression;
    near D = 0 the sinh(x)/x factor switches to its series.  Accepts a
    scalar or array time argument, which must be non-negative.
    """
    if gamma0 < 0 or lam <= 0 or n_qubits < 1:
        raise ValueError("need gamma0 >= 0, lam > 0, n_qubits >= 1")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    d = cmath.sqrt(complex(lam * lam - 2.0 * gamma0 * lam * n_qubits))
    tmax = float(t.max()) if t.size else 0.0
    if abs(d) * tmax * 0.5 < 1e-6:
        s2 = (0.5 * d * t) ** 2
        sinhc = 1.0 + s2 / 6.0 + s2 * s2 / 120.0
        core = np.exp(-0.5 * lam * t) * (np.cosh(0.5 * d * t) + (0.5 * lam * t) * sinhc)
    else:
        # exp-pair form: both exponents have non-positive real part, so no
        # overflow for any horizon (Re D <= lam on the physical branch)
        r = lam / d
        core = 0.5 * (1.0 + r) * np.exp(0.5 * (d - lam) * t) + 0.5 * (1.0 - r) * np.exp(
            -0.5 * (d + lam) * t
        )
    g = 1.0 + (core - 1.0) / n_qubits
    return g if g.ndim else complex(g)


def analytic_trajectory(config: SimulationConfig) -> AmplitudeTrajectory:
    """Sample the Lorentzian closed form on the config grid."""
    sd = config.sd
    if not isinstance(sd, Lorentzian):
        raise TypeError("analytic trajectory is only available for Lorentzian reservoirs")
    times = config.grid()
    c1 = lorentzian_propagator(config.n_qubits, sd.gamma0, sd.lam, times)
    return AmplitudeTrajectory(times, c1, np.abs(c1) ** 2, method="analytic")


def _kernel_grid(sd: SpectralDensity, times: np.ndarray) -> np.ndarray:
    return np.asarray(correlation_kernel(sd, times), dtype=complex)


def _check_physical(c1: np.ndarray, solver_tol: float, step: float) -> None:
    peak = float(np.abs(c1).max())
    if peak > 1.0 + 1e3 * solver_tol:
        raise UnstableStepError(
            f"|C_1| reached {peak:.6g} (> 1 + 1e3*solver_tol); "
            f"step {step} is too large for this kernel, reduce it"
        )


def solve_amplitude(config: SimulationConfig) -> AmplitudeTrajectory:
    """Integrate the symmetry-reduced scalar Volterra equation.

    Trapezoidal product integration of the memory term with an
    Euler-predictor / trapezoid-corrector step (PECE); the kernel is
    precomputed on the grid once since it depends only on t - s.
    """
    times = config.grid()
    h = float(times[1] - times[0])
    n_steps = len(times) - 1
    f = _kernel_grid(config.sd, times)
    frev = f[::-1].copy()  # contiguous reversed view for the history dot product

    u = np.empty(n_steps + 1, dtype=complex)
    du = np.empty(n_steps + 1, dtype=complex)
    u[0] = 1.0
    du[0] = 0.0
    nq = config.n_qubits
    for n in range(n_steps):
        hist = np.dot(frev[n_steps - n : n_steps], u[1 : n + 1]) if n else 0.0
        base = 0.5 * f[n + 1] * u[0] + hist
        u_pred = u[n] + h * du[n]
        du_pred = -nq * h * (base + 0.5 * f[0] * u_pred)
        u[n + 1] = u[n] + 0.5 * h * (du[n] + du_pred)
        du[n + 1] = -nq * h * (base + 0.5 * f[0] * u[n + 1])

    c1 = 1.0 + (u - 1.0) / nq
    _check_physical(c1, config.solver_tol, config.step)
    return AmplitudeTrajectory(times, c1, np.abs(c1) ** 2, method="volterra")


def solve_amplitude_vector(config: SimulationConfig) -> VectorAmplitudes:
    """Integrate the full N-component system without the symmetry reduction.

    Validation oracle for solve_amplitude (N <= 16): every component
    couples to the memory integral of the summed amplitudes, with the
    probe starting excited and the spectators in the ground state.
    """
    if config.n_qubits > 16:
        raise ValueError("vector oracle is limited to n_qubits <= 16")
    times = config.grid()
    h = float(times[1] - times[0])
    n_steps = len(times) - 1
    f = _kernel_grid(config.sd, times)
    frev = f[::-1].copy()
    nq = config.n_qubits

    c = np.zeros((n_steps + 1, nq), dtype=complex)
    d = np.zeros((n_steps + 1, nq), dtype=complex)
    s = np.empty(n_steps + 1, dtype=complex)
    c[0, 0] = 1.0
    s[0] = c[0].sum()
    for n in range(n_steps):
        hist = np.dot(frev[n_steps - n : n_steps], s[1 : n + 1]) if n else 0.0
        base = 0.5 * f[n + 1] * s[0] + hist
        c_pred = c[n] + h * d[n]
        d_pred = -h * (base + 0.5 * f[0] * c_pred.sum())
        c[n + 1] = c[n] + 0.5 * h * (d[n] + d_pred)
        s[n + 1] = c[n + 1].sum()
        d[n + 1] = -h * (base + 0.5 * f[0] * s[n + 1])

    _check_physical(c[:, 0], config.solver_tol, config.step)
    return VectorAmplitudes(times, c)


def decay_rate(trajectory: AmplitudeTrajectory, floor: float = 1e-12) -> DecayRateSeries:
    """Gamma(t) = -Re(dC_1/dt / C_1) by centered differences.

    Where |C_1| falls to the floor the quotient is no longer meaningful:
    the series is truncated at the first offending sample and flagged.
    """
    mag = np.abs(trajectory.c1)
    bad = np.nonzero(mag <= floor)[0]
    stop = int(bad[0]) if bad.size else len(mag)
    truncated = stop < len(mag)
    if stop < 3:
        return DecayRateSeries(trajectory.times[:0], np.empty(0), True)
    times = trajectory.times[:stop]
    c1 = trajectory.c1[:stop]
    dc1 = np.gradient(c1, times, edge_order=2)
    gamma = -np.real(dc1 / c1)
    return DecayRateSeries(times, gamma, truncated)
