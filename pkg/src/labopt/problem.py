"""Box-constrained optimization problems.

Every problem in this package is an objective over a rectangular box:
coordinate i of a candidate solution is constrained to
``[lower[i], upper[i]]``.  Optimizers repair out-of-box iterates by
clamping, so objectives are only ever evaluated on the box.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np


class Sense(Enum):
    """Optimization direction."""

    MINIMIZE = "min"
    MAXIMIZE = "max"


class ConfigError(ValueError):
    """Structurally invalid problem or optimizer configuration."""


class EvaluationError(RuntimeError):
    """An objective returned a non-finite value.

    The offending position is kept on the exception so callers can log
    or reproduce the failure.
    """

    def __init__(self, message: str, position) -> None:
        super().__init__(message)
        self.position = np.array(position, dtype=float)


@dataclass
class Problem:
    """An objective function together with its box and direction.

    Parameters
    ----------
    name : str
        Identifier used in traces and result files.
    dim : int
        Number of decision variables.
    lower, upper : array_like
        Per-coordinate bounds, each of length ``dim`` with
        ``lower < upper`` elementwise.
    sense : Sense
        Whether the objective is minimized or maximized.
    objective : callable
        Maps a length-``dim`` vector to a real number.
    """

    name: str
    dim: int
    lower: np.ndarray
    upper: np.ndarray
    sense: Sense
    objective: Callable[[np.ndarray], float]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ConfigError(f"problem dimension must be >= 1, got {self.dim}")
        self.lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        self.upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if self.lower.shape != (self.dim,) or self.upper.shape != (self.dim,):
            raise ConfigError(
                f"bounds of problem '{self.name}' must have shape ({self.dim},), "
                f"got {self.lower.shape} and {self.upper.shape}"
            )
        if not np.all(np.isfinite(self.lower)) or not np.all(np.isfinite(self.upper)):
            raise ConfigError(f"bounds of problem '{self.name}' must be finite")
        if not np.all(self.lower < self.upper):
            raise ConfigError(
                f"problem '{self.name}' needs lower < upper in every coordinate"
            )

    def evaluate(self, x: np.ndarray) -> float:
        """Evaluate the objective, rejecting non-finite results."""
        value = float(self.objective(np.asarray(x, dtype=float)))
        if not math.isfinite(value):
            raise EvaluationError(
                f"objective of '{self.name}' returned {value!r}", x
            )
        return value

    def contains(self, x: np.ndarray, atol: float = 0.0) -> bool:
        """True when ``x`` lies inside the box (within ``atol`` slack)."""
        x = np.asarray(x, dtype=float)
        return bool(
            np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol)
        )


def clamp_to_bounds(x: np.ndarray, problem: Problem) -> np.ndarray:
    """Project ``x`` onto the problem's box, coordinate by coordinate."""
    return np.clip(np.asarray(x, dtype=float), problem.lower, problem.upper)


def oriented(value: float, sense: Sense) -> float:
    """Map a fitness to minimize-space (maximize problems are negated)."""
    return value if sense is Sense.MINIMIZE else -value


def is_better(a: float, b: float, sense: Sense) -> bool:
    """Strictly better under the problem's sense."""
    return a < b if sense is Sense.MINIMIZE else a > b
