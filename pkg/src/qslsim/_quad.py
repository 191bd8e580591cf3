"""Thin checked wrapper around scipy's adaptive quadrature."""

from __future__ import annotations

from typing import Callable

from scipy.integrate import quad

from .errors import QuadratureError


def quad_checked(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    tol: float,
    limit: int = 400,
    weight: str | None = None,
    wvar: float | None = None,
) -> float:
    """Integrate func over [a, b] to absolute accuracy tol, or raise.

    Raises QuadratureError (carrying the error estimate) when QUADPACK
    reports non-convergence and its estimate exceeds the requested tol.
    """
    kwargs = dict(epsabs=tol, epsrel=0.0, limit=limit, full_output=1)
    if weight is not None:
        kwargs.update(weight=weight, wvar=wvar, limlst=100)
    out = quad(func, a, b, **kwargs)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > 10.0 * tol:
        raise QuadratureError(
            f"quadrature did not converge on [{a}, {b}]: {out[3]} "
            f"(estimate {value!r}, residual {abserr!r})",
            residual=abserr,
        )
    return value
