"""Fixed-step explicit Runge-Kutta integration of autonomous systems y' = f(y)."""

from collections.abc import Callable
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from ..utils.logging import get_logger

logger = get_logger("ode")

FloatArray = npt.NDArray[np.float64]
RightHandSide = Callable[[FloatArray], npt.ArrayLike]

# classical 4th order scheme
RK4_STAGES = (0.0, 0.5, 0.5, 1.0)
RK4_TABLE = {
    0: [0.5],
    1: [0.0, 0.5],
    2: [0.0, 0.0, 1.0],
    3: [1 / 6, 1 / 3, 1 / 3, 1 / 6],
}


class Trajectory(NamedTuple):
    """Samples of an integrated trajectory."""

    times: FloatArray
    states: FloatArray  # (len(times), n)
    slopes: FloatArray  # f(state) at each sample


def rk4_step(f: RightHandSide, y: FloatArray, h: float) -> FloatArray:
    """One classical Runge-Kutta step of size h (negative h integrates backwards)."""
    slopes = []
    for stage in range(len(RK4_STAGES)):
        coefficients = RK4_TABLE.get(stage - 1, [])
        increment = sum((b * k for b, k in zip(coefficients, slopes, strict=True)), 0.0)
        slopes.append(np.asarray(f(y + h * increment), dtype=float))
    weights = RK4_TABLE[len(RK4_STAGES) - 1]
    return y + h * sum(b * k for b, k in zip(weights, slopes, strict=True))


def integrate(
    f: RightHandSide,
    y0: npt.ArrayLike,
    t0: float,
    t1: float,
    step: float,
    guard: Callable[[float, FloatArray], None] | None = None,
) -> Trajectory:
    """Integrate from t0 to t1 with steps of at most ``step``.

    The last step is shortened to land exactly on t1. ``guard(t, y)`` is called on every
    accepted state and may raise to stop the integration.

    Raises:
        ValueError: step is not positive
    """
    if step <= 0:
        raise ValueError("step must be positive")
    y = np.array(y0, dtype=float).reshape(-1)
    span = t1 - t0
    count = max(1, int(np.ceil(abs(span) / step - 1e-9))) if span != 0 else 0
    times = np.linspace(t0, t1, count + 1)
    states = np.empty((count + 1, y.size))
    states[0] = y
    if guard is not None:
        guard(t0, y)
    for n in range(count):
        y = rk4_step(f, y, times[n + 1] - times[n])
        if guard is not None:
            guard(float(times[n + 1]), y)
        states[n + 1] = y
    slopes = np.array([np.asarray(f(state), dtype=float) for state in states])
    logger.debug(f"Integrated {y.size}-dimensional system from {t0} to {t1} in {count} steps")
    return Trajectory(times, states, slopes)
