"""Shared sweep plumbing: bounded thread pools with ordered assembly."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

from .errors import NumericError

THREADS_ENV = "QSLSIM_THREADS"

C = TypeVar("C")
R = TypeVar("R")


def resolve_workers(max_workers: int | None = None) -> int:
    """Worker count: explicit argument, else the QSLSIM_THREADS cap, else 1."""
    if max_workers is not None:
        return max(1, int(max_workers))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}")
    return 1


def run_cells(
    cells: Sequence[C],
    work: Callable[[C], R],
    workers: int,
) -> Iterable[tuple[C, R | None, NumericError | None]]:
    """Evaluate work(cell) for every cell, yielding in input order.

    Numeric failures are captured per cell rather than raised, so one bad
    cell cannot abort a sweep.  Results are yielded in the order of the
    input sequence regardless of completion order.
    """
    if workers <= 1 or len(cells) <= 1:
        for cell in cells:
            try:
                yield cell, work(cell), None
            except NumericError as err:
                yield cell, None, err
        return

    def guarded(cell: C):
        try:
            return work(cell), None
        except NumericError as err:
            return None, err

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for cell, (result, err) in zip(cells, pool.map(guarded, cells)):
            yield cell, result, err
