"""Figure rendering for trajectories, scans and sweeps.

Figures are written as SVG next to the CSV ground truth.  Output is kept
reproducible: a fixed hash salt for element ids and no embedded creation
date.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamics import AmplitudeTrajectory, DecayRateSeries
from .tables import SweepTable

plt.rcParams["svg.hashsalt"] = "qslsim"

_SAVE_KW = {"format": "svg", "metadata": {"Date": None}}


def _new_axes(xlabel: str, ylabel: str, title: str):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _finish(fig, ax, path: str | Path, legend: bool = True) -> Path:
    if legend and ax.get_legend_handles_labels()[0]:
        ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def save_population_plot(
    trajectory: AmplitudeTrajectory,
    path: str | Path,
    gamma: DecayRateSeries | None = None,
) -> Path:
    """Population |C_1(t)|^2 vs time, optionally with the decay rate."""
    fig, ax = _new_axes("t (units of 1/omega0)", "|C_1(t)|^2", "probe population")
    ax.plot(trajectory.times, trajectory.population, lw=1.2, label="population")
    if gamma is not None and len(gamma.times):
        twin = ax.twinx()
        twin.plot(gamma.times, gamma.gamma, lw=0.9, color="tab:red", label="decay rate")
        twin.set_ylabel("Gamma(t) (units of omega0)")
    return _finish(fig, ax, path)


def _grouped(table: SweepTable, value_col: str):
    coupling = table.column("coupling")
    n_col = table.column("N")
    values = table.column(value_col)
    series: dict[int, tuple[list, list]] = {}
    for c, n, v in zip(coupling, n_col, values):
        if v is None:
            continue
        xs, ys = series.setdefault(n, ([], []))
        xs.append(c)
        ys.append(v)
    return series


def save_scan_plot(table: SweepTable, path: str | Path) -> Path:
    """Bound-state energy vs coupling, one line per qubit count."""
    fig, ax = _new_axes(
        "coupling (units of omega0)", "bound energy (units of omega0)", "bound-state energies"
    )
    for n, (xs, ys) in sorted(_grouped(table, "energy").items()):
        ax.plot(xs, ys, lw=1.2, marker=".", ms=3, label=f"N={n}")
    return _finish(fig, ax, path)


def save_sweep_plot(table: SweepTable, path: str | Path) -> Path:
    """Speed-limit time vs coupling, one line per qubit count."""
    fig, ax = _new_axes(
        "coupling (units of omega0)", "tau_qsl (units of 1/omega0)", "speed-limit times"
    )
    for n, (xs, ys) in sorted(_grouped(table, "tau_qsl").items()):
        ax.plot(xs, ys, lw=1.2, marker=".", ms=3, label=f"N={n}")
    return _finish(fig, ax, path)
