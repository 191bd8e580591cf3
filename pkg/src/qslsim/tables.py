"""Rectangular sweep results with deterministic CSV serialization."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


def _fmt(cell) -> str:
    if cell is None:
        return ""
    if isinstance(cell, (bool, np.bool_)):
        return "true" if cell else "false"
    if isinstance(cell, (int, np.integer)):
        return str(int(cell))
    if isinstance(cell, (float, np.floating)):
        return repr(float(cell))
    return str(cell)


@dataclass
class SweepTable:
    """Header plus rows of plain values; None renders as an empty field.

    cell_errors collects per-cell failure notes; they are diagnostics and
    are not part of the CSV payload.
    """

    columns: tuple[str, ...]
    rows: list[tuple]
    cell_errors: list[str] = field(default_factory=list)

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(
                    f"row width {len(row)} does not match header width {len(self.columns)}"
                )

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines.extend(",".join(_fmt(cell) for cell in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_csv(), newline="\n")
        return path
