"""Bound states of the joint qubits-reservoir system.

A discrete level below the continuum edge solves E = y(E) with

    y(E) = omega0 - N * int_0^inf J(w) / (w - E) dw,   E <= 0,

and exists exactly when y(0) < 0.  For the Ohmic family this reduces to
the closed criterion gamma > 2*pi*omega0 / (N*omega_c).  For the
Lorentzian family J(0) > 0 makes the E = 0 integral diverge
logarithmically, so y(0) = -inf for any nonzero coupling: a root always
exists but sits exponentially close to the continuum edge at weak
coupling, far below what floating point can resolve.  find_bound_state
therefore reports exists=False (flagged marginal) whenever the root
cannot be located, which is what a finite-precision energy scan sees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._quad import quad_checked
from .errors import BracketExpansionError, NumericError
from .spectral import (
    DEFAULT_QUAD_TOL,
    Lorentzian,
    SpectralDensity,
    coupling_of,
    with_coupling,
)
from .tables import SweepTable
from .util import resolve_workers, run_cells

SCAN_COLUMNS = ("coupling", "N", "energy", "exists", "residual")

# |y(0)| below this (in units of omega0) marks a near-critical result
MARGINAL_Y0_BAND = 1e-6

_MAX_BRACKET_DOUBLINGS = 60


@dataclass(frozen=True)
class BoundStateResult:
    """Outcome of a bound-state search.

    energy and residual are None when no level was located.  marginal is
    set when y(0) is within quadrature noise of the continuum edge, or
    when y(0) < 0 but the root lies too close to zero to resolve.
    """

    exists: bool
    y_at_zero: float
    energy: float | None
    bracket_expansions: int
    residual: float | None
    marginal: bool = False


def _density_scalar(sd: SpectralDensity):
    """Scalar J(w) closure used inside quadrature loops."""
    if isinstance(sd, Lorentzian):
        pref = sd.gamma0 * sd.lam**2 / (2.0 * math.pi)
        w0, lam2 = sd.omega0, sd.lam**2

        def j(w: float) -> float:
            return pref / ((w - w0) ** 2 + lam2)

    else:
        pref = sd.gamma / (2.0 * math.pi)
        wc = sd.omega_c

        def j(w: float) -> float:
            return pref * w * math.exp(-w / wc)

    return j


def _level_shift_integral(sd: SpectralDensity, energy: float, tol: float) -> float:
    """int_0^inf J(w)/(w - E) dw for E < 0.

    Split at A: on [0, A] the substitution v = log(1 + w/|E|) removes the
    near-edge 1/(w + |E|) concentration exactly (dv = dw/(w + |E|)), which
    keeps the integrand tame even for |E| down to the subnormal range; the
    tail [A, inf) is regular.
    """
    j = _density_scalar(sd)
    a = -energy
    A = sd.omega0 if isinstance(sd, Lorentzian) else sd.omega_c
    log_a = math.log(a)
    ratio = A / a if a > A * 1e-18 else math.inf
    vmax = math.log1p(ratio) if math.isfinite(ratio) else math.log(A) - log_a

    def near_edge(v: float) -> float:
        # w = |E| * (exp(v) - 1); go through log space once expm1 would overflow
        w = math.exp(v + log_a) if v > 500.0 else a * math.expm1(v)
        return j(w)

    head = quad_checked(near_edge, 0.0, vmax, tol=tol / 2.0)
    tail = quad_checked(lambda w: j(w) / (w - energy), A, np.inf, tol=tol / 2.0)
    return head + tail


def y_of(
    sd: SpectralDensity,
    n_qubits: int,
    energy: float,
    tol: float = DEFAULT_QUAD_TOL,
) -> float:
    """Self-consistency map y(E) = omega0 - N * int_0^inf J(w)/(w-E) dw.

    Requires E <= 0 (energies inside the continuum are rejected).  At
    E = 0 the integral diverges to +inf whenever J(0) > 0 (Lorentzian
    with nonzero coupling), in which case -inf is returned.
    """
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if energy > 0:
        raise ValueError(f"energy must be <= 0 (continuum edge), got {energy}")
    j = _density_scalar(sd)
    if energy == 0.0:
        if j(0.0) > 0.0:
            return -math.inf
        integral = quad_checked(
            lambda w: j(w) / w if w > 0 else j(0.0), 0.0, np.inf, tol=tol / max(1, n_qubits)
        )
    else:
        integral = _level_shift_integral(sd, energy, tol / max(1, n_qubits))
    return sd.omega0 - n_qubits * integral


def bound_state_exists(
    sd: SpectralDensity, n_qubits: int, tol: float = DEFAULT_QUAD_TOL
) -> tuple[bool, float]:
    """(y(0) < 0, y(0)): the existence criterion and its value."""
    y0 = y_of(sd, n_qubits, 0.0, tol)
    return y0 < 0.0, y0


def ohmic_critical_coupling(omega0: float, omega_c: float, n_qubits: int) -> float:
    """Smallest Ohmic coupling supporting a bound state: 2*pi*omega0/(N*omega_c)."""
    if omega0 <= 0 or omega_c <= 0 or n_qubits < 1:
        raise ValueError("omega0, omega_c and n_qubits must be positive")
    return 2.0 * math.pi * omega0 / (n_qubits * omega_c)


def find_bound_state(
    sd: SpectralDensity, n_qubits: int, tol: float = 1e-8
) -> BoundStateResult:
    """Locate the negative-energy solution of E = y(E), if resolvable.

    Bisection on g(E) = E - y(E), which is strictly increasing (y' < 0
    for E < 0): the left end is expanded by doubling from -omega0 until
    g < 0, the right end is the continuum edge where g > 0 whenever
    y(0) < 0.  Iteration continues past the |bracket| <= tol stage until
    |E - y(E)| <= tol as well, so the returned level reproduces itself
    under y.  If floating point is exhausted first the root is closer to
    the edge than any representable offset: reported as exists=False,
    marginal=True.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    quad_tol = min(DEFAULT_QUAD_TOL, tol * 1e-2)
    y0 = y_of(sd, n_qubits, 0.0, quad_tol)
    marginal_y0 = 0.0 > y0 > -MARGINAL_Y0_BAND * sd.omega0
    if y0 >= 0.0:
        return BoundStateResult(False, y0, None, 0, None, marginal=False)

    def g(e: float) -> float:
        return e - y_of(sd, n_qubits, e, quad_tol)

    lo = -sd.omega0
    expansions = 0
    while g(lo) >= 0.0:
        lo *= 2.0
        expansions += 1
        if expansions > _MAX_BRACKET_DOUBLINGS:
            raise BracketExpansionError(
                f"no sign change of E - y(E) down to E = {lo!r}; root unreachable"
            )
    hi = 0.0  # g(0-) = -y(0) > 0, never evaluated directly
    best_e = lo
    best_r = math.inf
    while hi - lo > tol or best_r > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        gm = g(mid)
        if abs(gm) <= best_r:
            best_e, best_r = mid, abs(gm)
        if gm < 0.0:
            lo = mid
        else:
            hi = mid
    if best_r <= tol and best_e < 0.0:
        return BoundStateResult(True, y0, best_e, expansions, best_r, marginal=marginal_y0)
    # root pinched against the continuum edge beyond float resolution
    return BoundStateResult(False, y0, None, expansions, None, marginal=True)


def bound_energy_scan(
    sd_template: SpectralDensity,
    couplings: Sequence[float],
    n_list: Sequence[int],
    tol: float = 1e-8,
    max_workers: int | None = None,
) -> SweepTable:
    """Bound-state energy per (coupling, N) cell.

    Rows are ordered by (N, coupling); cells without a resolvable level
    carry empty energy/residual fields; per-cell numeric failures are
    recorded in the table's cell_errors instead of aborting the scan.
    """
    couplings = [float(c) for c in couplings]
    if any(c < 0 for c in couplings) or any(
        b <= a for a, b in zip(couplings, couplings[1:])
    ):
        raise ValueError("couplings must be non-negative and strictly increasing")
    cells = [(n, c) for n in n_list for c in couplings]

    def work(cell: tuple[int, float]):
        nq, c = cell
        return find_bound_state(with_coupling(sd_template, c), nq, tol)

    rows = []
    errors = []
    for (nq, c), outcome, err in run_cells(cells, work, resolve_workers(max_workers)):
        if err is not None:
            errors.append(f"coupling={c!r} N={nq}: {err}")
            rows.append((c, nq, None, False, None))
        else:
            rows.append((c, nq, outcome.energy, outcome.exists, outcome.residual))
    rows.sort(key=lambda r: (r[1], r[0]))
    return SweepTable(SCAN_COLUMNS, rows, cell_errors=errors)
