"""Reservoir spectral densities and the memory kernel they induce.

Two reservoir families are built in, both parameterised in units of the
qubit transition frequency omega0:

* Lorentzian: J(w) = (1/2pi) * gamma0 * lambda^2 / ((w - omega0)^2 + lambda^2)
* Ohmic:      J(w) = (gamma/2pi) * w * exp(-w/omega_c)

The memory kernel f(tau) is the Fourier-type transform of J weighted by
exp(i*(omega0 - w)*tau).  For the Lorentzian family the frequency integral
is extended over the whole real line, which yields the exponential kernel
(gamma0*lambda/2) * exp(-lambda*tau); the Ohmic family keeps the physical
domain [0, inf).  A quadrature-based evaluation of the same integral is
provided as an independent cross-check of the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from ._quad import quad_checked

DEFAULT_QUAD_TOL = 1e-10


@dataclass(frozen=True)
class Lorentzian:
    """Lorentzian coupling spectrum peaked at omega0 with width lam.

    gamma0 is the coupling strength; gamma0 = 0 describes a decoupled
    qubit and is allowed, every other rate must be strictly positive.
    """

    gamma0: float
    lam: float
    omega0: float = 1.0

    def __post_init__(self):
        if self.gamma0 < 0:
            raise ValueError(f"gamma0 must be >= 0, got {self.gamma0}")
        if self.lam <= 0:
            raise ValueError(f"lam must be > 0, got {self.lam}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")


@dataclass(frozen=True)
class Ohmic:
    """Ohmic coupling spectrum with exponential cutoff at omega_c."""

    gamma: float
    omega_c: float
    omega0: float = 1.0

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.omega_c <= 0:
            raise ValueError(f"omega_c must be > 0, got {self.omega_c}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")


SpectralDensity = Union[Lorentzian, Ohmic]


@dataclass(frozen=True)
class KernelValue:
    """Memory kernel sample: complex amplitude at non-negative delay tau."""

    tau: float
    value: complex

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")


def coupling_of(sd: SpectralDensity) -> float:
    """The sweep parameter of a density: gamma0 (Lorentzian) or gamma (Ohmic)."""
    return sd.gamma0 if isinstance(sd, Lorentzian) else sd.gamma


def with_coupling(sd: SpectralDensity, value: float) -> SpectralDensity:
    """Copy of sd with its coupling strength replaced."""
    if isinstance(sd, Lorentzian):
        return replace(sd, gamma0=value)
    return replace(sd, gamma=value)


def _lorentzian_j(sd: Lorentzian, w):
    # valid on the full real line (analytic continuation used by the kernel)
    return (sd.gamma0 * sd.lam**2 / (2.0 * math.pi)) / ((w - sd.omega0) ** 2 + sd.lam**2)


def _ohmic_j(sd: Ohmic, w):
    return (sd.gamma / (2.0 * math.pi)) * w * np.exp(-w / sd.omega_c)


def evaluate_density(sd: SpectralDensity, omega):
    """Spectral density J(omega) for omega >= 0 (scalar or array)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("omega must be >= 0")
    if isinstance(sd, Lorentzian):
        out = _lorentzian_j(sd, omega)
    else:
        out = _ohmic_j(sd, omega)
    return out if out.ndim else float(out)

def correlation_kernel(sd: SpectralDensity, tau):
    """Closed-form memory kernel f(tau) for tau >= 0 (scalar or array).

    Lorentzian: (gamma0*lam/2) * exp(-lam*tau), real.
    Ohmic:      (gamma/2pi) * exp(i*omega0*tau) / (1/omega_c + i*tau)^2.
    """
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise ValueError("tau must be >= 0")
    if isinstance(sd, Lorentzian):
        out = (0.5 * sd.gamma0 * sd.lam) * np.exp(-sd.lam * tau) + 0.0j
    else:
        out = (sd.gamma / (2.0 * math.pi)) * np.exp(1j * sd.omega0 * tau) / (
            1.0 / sd.omega_c + 1j * tau
        ) ** 2
    return out if out.ndim else complex(out)


def correlation_kernel_quadrature(
    sd: SpectralDensity, tau: float, tol: float = DEFAULT_QUAD_TOL
) -> complex:
    """Memory kernel f(tau) by adaptive quadrature of the frequency integral.

    Independent of the closed forms in correlation_kernel; intended as a
    cross-check.  The Lorentzian integral runs over the full real line and
    is evaluated with Fourier-weighted quadrature; the Ohmic integral runs
    over [0, inf) mapped to [0, 1) via omega = omega_c * x / (1 - x).
    """
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if isinstance(sd, Lorentzian):
        return _lorentzian_kernel_quad(sd, tau, tol)
    return _ohmic_kernel_quad(sd, tau, tol)


def _lorentzian_kernel_quad(sd: Lorentzian, tau: float, tol: float) -> complex:
    # shift u = w - omega0: f(tau) = int_-inf^inf J(omega0+u) exp(-i*u*tau) du
    w0 = sd.omega0

    def j_sum(u):
        return _lorentzian_j(sd, w0 + u) + _lorentzian_j(sd, w0 - u)

    def j_diff(u):
        return _lorentzian_j(sd, w0 - u) - _lorentzian_j(sd, w0 + u)

    if tau == 0.0:
        return complex(quad_checked(j_sum, 0.0, np.inf, tol=tol), 0.0)
    re = quad_checked(j_sum, 0.0, np.inf, tol=tol, weight="cos", wvar=tau)
    im = quad_checked(j_diff, 0.0, np.inf, tol=tol, weight="sin", wvar=tau)
    return complex(re, im)


def _ohmic_kernel_quad(sd: Ohmic, tau: float, tol: float) -> complex:
    wc, w0 = sd.omega_c, sd.omega0
    pref = sd.gamma / (2.0 * math.pi)

    def transformed(x: float, trig) -> float:
        if x >= 1.0:
            return 0.0
        w = wc * x / (1.0 - x)
        density = pref * w * math.exp(-w / wc)
        return density * trig((w0 - w) * tau) * wc / (1.0 - x) ** 2

    re = quad_checked(lambda x: transformed(x, math.cos), 0.0, 1.0, tol=tol)
    im = quad_checked(lambda x: transformed(x, math.sin), 0.0, 1.0, tol=tol)
    return complex(re, im)
