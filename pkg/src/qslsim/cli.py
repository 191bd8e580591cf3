"""Command-line front end.

Subcommands: dynamics, bound-scan, qsl-sweep, reproduce.  Every run
resolves defaults < config file < flags, writes CSV ground truth plus an
SVG rendering into --out, and finishes with a manifest recording the
resolved parameters and a sha256 checksum of every emitted file.  All
frequencies and rates are in units of omega0 (= 1 unless overridden);
times are in units of 1/omega0.  Exit codes: 0 success, 2 usage or
configuration error, 3 numeric failure.

The `reproduce` panels are canned parameter studies over N in
{1, 2, 4, 10}: fig1a/fig1b scan the Lorentzian family (width 1) over
coupling 0..4, fig2a/fig2b the Ohmic family (cutoff 1) over coupling
0..8; the a-panels tabulate bound energies, the b-panels speed-limit
times for a driving window of 10.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .boundstate import bound_energy_scan
from .config import ConfigError, RunManifest, parse_config_file, parse_n_list
from .dynamics import SimulationConfig, decay_rate, solve_amplitude
from .errors import NumericError
from .plots import save_population_plot, save_scan_plot, save_sweep_plot
from .qsl import qsl_sweep
from .spectral import Lorentzian, Ohmic

PANELS = ("fig1a", "fig1b", "fig2a", "fig2b")

_GRID_DEFAULTS = {"lorentzian": (0.0, 4.0, 0.05), "ohmic": (0.0, 8.0, 0.1)}
_DEFAULT_N_LIST = [1, 2, 4, 10]

# flag dest -> canonical config key
_KEY_OF_DEST = {"lam": "lambda"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qslsim",
        description="Dissipative qubit dynamics, reservoir bound states and speed-limit times",
    )
    parser.add_argument("--version", action="version", version=f"qslsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p: argparse.ArgumentParser, *, grids: bool):
        p.add_argument("--density", choices=("lorentzian", "ohmic"), help="reservoir family")
        p.add_argument("--gamma0", type=float, help="Lorentzian coupling strength")
        p.add_argument("--lambda", dest="lam", type=float, help="Lorentzian spectral width")
        p.add_argument("--gamma", type=float, help="Ohmic dimensionless coupling")
        p.add_argument("--omega-c", dest="omega_c", type=float, help="Ohmic cutoff frequency")
        p.add_argument("--omega0", type=float, help="qubit transition frequency (unit scale)")
        p.add_argument("--tau", type=float, help="driving window length")
        p.add_argument("--step", type=float, help="integration step")
        p.add_argument("--tol", type=float, help="primary tolerance of the command")
        p.add_argument("--n-list", dest="n_list", help="comma-separated qubit counts")
        p.add_argument("--out", help="output directory")
        p.add_argument("--config", help="flat key = value configuration file")
        if grids:
            p.add_argument("--grid-start", dest="grid_start", type=float)
            p.add_argument("--grid-stop", dest="grid_stop", type=float)
            p.add_argument("--grid-step", dest="grid_step", type=float)

    p_dyn = sub.add_parser("dynamics", help="integrate one probe trajectory")
    add_shared(p_dyn, grids=False)
    p_dyn.add_argument("--n", type=int, help="total number of qubits sharing the reservoir")

    p_scan = sub.add_parser("bound-scan", help="bound-state energies over a coupling grid")
    add_shared(p_scan, grids=True)

    p_sweep = sub.add_parser("qsl-sweep", help="speed-limit times over a coupling grid")
    add_shared(p_sweep, grids=True)

    p_rep = sub.add_parser("reproduce", help="run a canned scan/sweep panel")
    p_rep.add_argument("panel", choices=PANELS)
    add_shared(p_rep, grids=True)

    return parser


def _flag_values(args: argparse.Namespace) -> dict:
    skip = {"command", "config", "panel"}
    values = {}
    for dest, value in vars(args).items():
        if dest in skip or value is None:
            continue
        values[_KEY_OF_DEST.get(dest, dest)] = value
    if "n_list" in values:
        values["n_list"] = parse_n_list(values["n_list"])
    return values


def _resolve(args: argparse.Namespace, defaults: dict, required: tuple[str, ...]):
    """defaults < config file < flags; provenance notes record overrides."""
    file_values = parse_config_file(args.config) if args.config else {}
    flag_values = _flag_values(args)
    params = dict(defaults)
    provenance = {}
    for key, value in file_values.items():
        if key in defaults or key in required:
            params[key] = value
    for key, value in flag_values.items():
        if key not in defaults and key not in required:
            continue
        if key in file_values and file_values[key] != value:
            provenance[key] = f"flag {_s(value)} overrides config {_s(file_values[key])}"
        params[key] = value
    for key in required:
        if params.get(key) is None:
            raise ConfigError(f"--{key.replace('_', '-')} is required")
    if args.config:
        provenance["config_file"] = str(args.config)
    return params, provenance


def _s(value) -> str:
    return ",".join(str(v) for v in value) if isinstance(value, list) else str(value)


def _reject(params: dict, flags: dict, keys: tuple[str, ...], why: str):
    for key in keys:
        if key in flags:
            raise ConfigError(f"--{key.replace('_', '-')} {why}")


def _make_density(params: dict):
    if params["density"] == "lorentzian":
        return Lorentzian(params["gamma0"], params["lambda"], params["omega0"])
    return Ohmic(params["gamma"], params["omega_c"], params["omega0"])


def _density_defaults(density: str | None, params: dict):
    if density == "lorentzian" and params.get("lambda") is None:
        params["lambda"] = 1.0
    elif density == "ohmic" and params.get("omega_c") is None:
        params["omega_c"] = 1.0


def _build_grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ConfigError(f"invariant violated: 0 < grid_step (got {step})")
    if stop <= start:
        raise ConfigError(f"grid_stop must exceed grid_start (got {start}..{stop})")
    count = int((stop - start) / step + 1e-9)
    return [round(start + k * step, 10) for k in range(count + 1)]


def _outdir(params: dict) -> Path:
    out = Path(params["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_dynamics(args: argparse.Namespace) -> int:
    defaults = {
        "density": None,
        "gamma0": None,
        "lambda": None,
        "gamma": None,
        "omega_c": None,
        "omega0": 1.0,
        "n": 1,
        "tau": 10.0,
        "step": 1e-3,
        "tol": 1e-8,
        "out": "qslsim-out",
    }
    params, provenance = _resolve(args, defaults, required=("density",))
    flags = _flag_values(args)
    if params["density"] == "lorentzian":
        _reject(params, flags, ("gamma", "omega_c"), "does not apply to a Lorentzian reservoir")
        if params["gamma0"] is None:
            raise ConfigError("--gamma0 is required for a Lorentzian reservoir")
    else:
        _reject(params, flags, ("gamma0", "lambda"), "does not apply to an Ohmic reservoir")
        if params["gamma"] is None:
            raise ConfigError("--gamma is required for an Ohmic reservoir")
    _density_defaults(params["density"], params)
    params = {k: v for k, v in params.items() if v is not None}

    config = SimulationConfig(
        n_qubits=params["n"],
        sd=_make_density(params),
        horizon=params["tau"],
        step=params["step"],
        solver_tol=params["tol"],
    )
    out = _outdir(params)
    manifest = RunManifest("dynamics", params, out, provenance=provenance)
    trajectory = solve_amplitude(config)
    gamma = decay_rate(trajectory)
    manifest.record_file(trajectory.write_csv(out / "trajectory.csv"))
    gamma_lines = ["t,gamma"]
    gamma_lines += [f"{float(t)!r},{float(g)!r}" for t, g in zip(gamma.times, gamma.gamma)]
    gamma_path = out / "gamma.csv"
    gamma_path.write_text("\n".join(gamma_lines) + "\n", newline="\n")
    manifest.record_file(gamma_path)
    manifest.record_file(save_population_plot(trajectory, out / "trajectory.svg"))
    manifest.write()
    return 0


def _scan_params(args: argparse.Namespace, extra_defaults: dict, command: str):
    defaults = {
        "density": None,
        "lambda": None,
        "omega_c": None,
        "omega0": 1.0,
        "grid_start": None,
        "grid_stop": None,
        "grid_step": None,
        "out": "qslsim-out",
        "n_list": list(_DEFAULT_N_LIST),
        **extra_defaults,
    }
    params, provenance = _resolve(args, defaults, required=("density",))
    flags = _flag_values(args)
    _reject(params, flags, ("gamma0", "gamma"), f"is swept from the grid in {command}; use --grid-*")
    density = params["density"]
    if density == "lorentzian":
        _reject(params, flags, ("omega_c",), "does not apply to a Lorentzian reservoir")
    else:
        _reject(params, flags, ("lambda",), "does not apply to an Ohmic reservoir")
    _density_defaults(density, params)
    start, stop, step = _GRID_DEFAULTS[density]
    params["grid_start"] = params["grid_start"] if params["grid_start"] is not None else start
    params["grid_stop"] = params["grid_stop"] if params["grid_stop"] is not None else stop
    params["grid_step"] = params["grid_step"] if params["grid_step"] is not None else step
    params = {k: v for k, v in params.items() if v is not None}
    grid = _build_grid(params["grid_start"], params["grid_stop"], params["grid_step"])
    template = (
        Lorentzian(1.0, params["lambda"], params["omega0"])
        if density == "lorentzian"
        else Ohmic(1.0, params["omega_c"], params["omega0"])
    )
    return params, provenance, grid, template


def _cmd_bound_scan(args: argparse.Namespace, stem: str = "bound_scan") -> int:
    params, provenance, grid, template = _scan_params(args, {"tol": 1e-8}, "bound-scan")
    out = _outdir(params)
    manifest = RunManifest("bound-scan", params, out, provenance=provenance)
    table = bound_energy_scan(template, grid, params["n_list"], tol=params["tol"])
    manifest.record_file(table.write_csv(out / f"{stem}.csv"))
    manifest.record_file(save_scan_plot(table, out / f"{stem}.svg"))
    manifest.write()
    return 0


def _cmd_qsl_sweep(args: argparse.Namespace, stem: str = "qsl_sweep") -> int:
    params, provenance, grid, template = _scan_params(
        args, {"tau": 10.0, "step": 1e-3, "tol": 1e-8}, "qsl-sweep"
    )
    out = _outdir(params)
    manifest = RunManifest("qsl-sweep", params, out, provenance=provenance)
    table = qsl_sweep(
        template,
        grid,
        params["n_list"],
        tau=params["tau"],
        step=params["step"],
        solver_tol=params["tol"],
    )
    manifest.record_file(table.write_csv(out / f"{stem}.csv"))
    manifest.record_file(save_sweep_plot(table, out / f"{stem}.svg"))
    manifest.write()
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    panel = args.panel
    args.density = "lorentzian" if panel.startswith("fig1") else "ohmic"
    if panel.endswith("a"):
        return _cmd_bound_scan(args, stem=panel)
    return _cmd_qsl_sweep(args, stem=panel)


_HANDLERS = {
    "dynamics": _cmd_dynamics,
    "bound-scan": _cmd_bound_scan,
    "qsl-sweep": _cmd_qsl_sweep,
    "reproduce": _cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"qslsim: error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"qslsim: numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
