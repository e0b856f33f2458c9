"""Uniform one-dimensional grids and sampled functions on them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``x_min, x_min + h, ..., x_max`` with ``n_points`` nodes."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("a grid needs at least two points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @classmethod
    def with_spacing(cls, x_min: float, x_max: float, h: float) -> "Grid":
        n = int(round((x_max - x_min) / h)) + 1
        return cls(x_min, x_min + (n - 1) * h, n)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)


@dataclass
class GridFunction:
    """Samples of a real function on a uniform grid, stamped with a time."""

    x_min: float
    x_max: float
    n_points: int
    samples: np.ndarray = field(repr=False)
    time: float = 0.0
    info: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.n_points < 2:
            raise ValueError("a grid function needs at least two points")
        if self.samples.shape != (self.n_points,):
            raise ValueError(
                f"expected {self.n_points} samples, got shape {self.samples.shape}"
            )

    @classmethod
    def on(cls, grid: Grid, samples, time: float = 0.0) -> "GridFunction":
        return cls(grid.x_min, grid.x_max, grid.n_points, samples, time)

    @property
    def grid(self) -> Grid:
        return Grid(self.x_min, self.x_max, self.n_points)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def spacing(self) -> float:
        return self.grid.spacing

    def __call__(self, x) -> np.ndarray:
        """Linear interpolation; zero outside the tabulated range."""
        return np.interp(x, self.x, self.samples, left=0.0, right=0.0)
