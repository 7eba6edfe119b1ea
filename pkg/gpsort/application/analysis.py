from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import stats

MIN_FIT_POINTS = 3


class DegenerateFitError(Exception):
    """Raised when a log-log fit is not defined for the given points."""

    def __init__(self, reason: str) -> None:
        """Initialize the exception.

        Args:
            reason: Why the fit is not defined.
        """
        super().__init__(f"Cannot fit a log-log line: {reason}")
        self.reason = reason


@dataclass(frozen=True)
class FitResult:
    """Least-squares line through log-transformed points."""

    slope: float
    """Exponent of the fitted power law."""

    intercept: float
    """Natural log of the fitted power law's constant."""

    r_squared: float
    """Coefficient of determination; 1.0 for a perfect fit."""

    points: int
    """Number of points the line was fitted to."""


def fit_loglog(points: Sequence[tuple[float, float]]) -> FitResult:
    """Fit `log y = slope * log x + intercept` by ordinary least squares.

    Args:
        points: The `(x, y)` pairs.

    Raises:
        DegenerateFitError: If there are fewer than three points, a non-positive coordinate or a single x value.

    Returns:
        The fitted line.
    """
    if len(points) < MIN_FIT_POINTS:
        raise DegenerateFitError(f"need at least {MIN_FIT_POINTS} points, got {len(points)}")
    if any(x <= 0 or y <= 0 for x, y in points):
        raise DegenerateFitError("all coordinates must be positive")

    xs = np.log(np.array([x for x, _ in points], dtype=float))
    ys = np.log(np.array([y for _, y in points], dtype=float))
    if np.ptp(xs) == 0:
        raise DegenerateFitError("all x values are equal")

    result = stats.linregress(xs, ys)
    # linregress reports r = 0 for a constant series, which a flat line fits perfectly.
    r_squared = 1.0 if np.ptp(ys) == 0 else float(result.rvalue) ** 2
    return FitResult(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=r_squared,
        points=len(points),
    )
