"""Flat key=value configuration files and run manifests.

Both use the same one-`key = value`-per-line format with `#` comments,
so a manifest written by a run can be fed back through --config to
repeat it.  Manifest-only entries (command, file.* checksums,
provenance.* notes) are recognized and skipped when read as a config.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path


class ConfigError(ValueError):
    """Malformed configuration input (usage error, exit code 2)."""


_FLOAT_KEYS = {
    "gamma0",
    "lambda",
    "gamma",
    "omega_c",
    "omega0",
    "tau",
    "step",
    "tol",
    "grid_start",
    "grid_stop",
    "grid_step",
}
_INT_KEYS = {"n"}
_STR_KEYS = {"density", "out", "panel"}
_LIST_KEYS = {"n_list"}

KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _LIST_KEYS

_SKIP_PREFIXES = ("file.", "provenance.")
_SKIP_KEYS = {"command", "config_file"}


def _coerce(key: str, raw: str):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _LIST_KEYS:
            return parse_n_list(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None
    return raw


def parse_n_list(raw) -> list[int]:
    if isinstance(raw, (list, tuple)):
        values = [int(v) for v in raw]
    else:
        try:
            values = [int(part) for part in str(raw).split(",") if part.strip()]
        except ValueError:
            raise ConfigError(f"n_list must be comma-separated integers, got {raw!r}")
    if not values or any(v < 1 for v in values):
        raise ConfigError(f"n_list entries must be positive integers, got {raw!r}")
    return values


def parse_config_file(path: str | Path) -> dict:
    """Read a flat config, returning typed values keyed by canonical name."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        key = key.replace("-", "_")
        if key in _SKIP_KEYS or key.startswith(_SKIP_PREFIXES):
            continue
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key: {key}")
        values[key] = _coerce(key, raw)
    return values


def _fmt_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


@dataclass
class RunManifest:
    """Everything a run resolved plus checksums of everything it wrote."""

    command: str
    params: dict
    output_dir: Path
    files: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def record_file(self, path: Path) -> Path:
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        self.files[path.name] = digest
        return path

    def render(self) -> str:
        lines = [f"command = {self.command}"]
        for key in sorted(self.params):
            lines.append(f"{key} = {_fmt_value(self.params[key])}")
        for key in sorted(self.provenance):
            lines.append(f"provenance.{key} = {self.provenance[key]}")
        for name in sorted(self.files):
            lines.append(f"file.{name} = sha256:{self.files[name]}")
        return "\n".join(lines) + "\n"

    def write(self, name: str = "manifest.txt") -> Path:
        path = self.output_dir / name
        path.write_text(self.render(), newline="\n")
        return path
