"""Labeled one-dimensional parameter sweeps and their CSV form."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .io import format_number, write_metadata


@dataclass
class SweepResult:
    parameter_name: str
    grid: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)
    value_name: str = "value"

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.shape != self.values.shape or self.grid.ndim != 1:
            raise DomainError("grid and values must be 1-D arrays of equal length")

    def __len__(self):
        return self.grid.size

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.values))

    def to_csv(self, fh=None) -> str | None:
        """``param,value`` rows preceded by ``#`` metadata lines."""
        buf = io.StringIO() if fh is None else fh
        meta = {"parameter": self.parameter_name, "observable": self.value_name}
        meta.update(self.metadata)
        write_metadata(buf, meta)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["param", "value"])
        for x, y in zip(self.grid, self.values):
            writer.writerow([format_number(x), format_number(y)])
        return buf.getvalue() if fh is None else None


def check_grid(grid, name: str = "grid", positive: bool = False) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError(f"{name} must be a non-empty 1-D sequence")
    if np.any(np.isnan(grid)):
        raise DomainError(f"{name} contains NaN")
    if np.any(np.diff(grid) <= 0):
        raise DomainError(f"{name} must be strictly increasing")
    if positive and grid[0] <= 0:
        raise DomainError(f"{name} must be positive")
    return grid


def map_grid(func, items, jobs: int = 1) -> list:
    """Apply ``func`` to every item, preserving order; ``jobs > 1`` uses worker processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))
