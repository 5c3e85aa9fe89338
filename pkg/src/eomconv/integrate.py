"""Adaptive Dormand-Prince 5(4) integrator for complex-valued linear systems.

Steps are clipped to land exactly on requested output times, so no dense
output interpolation enters the reported values.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import IntegrationError, InvalidParameterError

# Dormand & Prince (1980) tableau; the 7th stage is FSAL.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B_LOW = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_E = _B - _B_LOW

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


def solve(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    times: Sequence[float],
    tol: float = 1e-10,
    first_step: float | None = None,
    max_steps: int = 1_000_000,
) -> np.ndarray:
    """Integrate ``y' = rhs(t, y)`` from ``times[0]`` and sample at every time.

    Parameters
    ----------
    rhs : callable
        Right-hand side, ``rhs(t, y) -> dy/dt``.
    y0 : ndarray
        State at ``times[0]``; complex arrays are fine.
    times : sequence of float
        Non-decreasing output times. The first one is the initial time.
    tol : float
        Per-step error bound. A component passes if its error estimate is
        below ``tol`` in absolute terms or relative to its magnitude,
        whichever is larger.

    Returns
    -------
    ndarray
        ``len(times)`` rows, one state per output time.

    Raises
    ------
    IntegrationError
        When the step size underflows or ``max_steps`` is exceeded.
    """
    if not tol > 0:
        raise InvalidParameterError(f"tolerance must be > 0, got {tol}")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise InvalidParameterError("times must be a non-empty 1-D sequence")
    if np.any(np.diff(times) < 0):
        raise InvalidParameterError("times must be non-decreasing")

    y = np.array(y0, dtype=np.result_type(y0, float))
    out = np.empty((times.size,) + y.shape, dtype=y.dtype)
    out[0] = y
    t = float(times[0])
    t_end = float(times[-1])
    if t_end == t:
        out[:] = y
        return out

    k = np.empty((7,) + y.shape, dtype=y.dtype)
    k[0] = rhs(t, y)
    h = first_step if first_step is not None else _initial_step(y, k[0], tol, t_end - t)
    idx = 1
    steps = 0

    while idx < times.size:
        target = times[idx]
        if target <= t:
            out[idx] = y
            idx += 1
            continue
        if steps >= max_steps:
            raise IntegrationError("maximum number of steps exceeded", t)
        landing = h >= target - t
        step = target - t if landing else h
        if step <= 16 * np.spacing(max(abs(t), 1.0)):
            raise IntegrationError("step size underflow", t)

        for i in range(1, 7):
            yi = y + step * np.tensordot(_A[i], k[:i], axes=1)
            k[i] = rhs(t + _C[i] * step, yi)
        y_new = y + step * np.tensordot(_B[:6], k[:6], axes=1)
        err = step * np.tensordot(_E, k, axes=1)
        scale = tol * np.maximum(1.0, np.maximum(np.abs(y), np.abs(y_new)))
        err_norm = float(np.max(np.abs(err) / scale))
        steps += 1

        if err_norm <= 1.0:
            t = target if landing else t + step
            y = y_new
            k[0] = k[6]
            if landing:
                out[idx] = y
                idx += 1
            factor = _MAX_FACTOR if err_norm == 0 else min(
                _MAX_FACTOR, _SAFETY * err_norm ** -0.2
            )
            # a clipped step says nothing about how large h may grow
            h = max(h, step * factor) if landing else step * factor
        else:
            h = step * max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
    return out


def _initial_step(y, f0, tol, span):
    d0 = float(np.max(np.abs(y))) or 1.0
    d1 = float(np.max(np.abs(f0)))
    h = 0.01 * d0 / d1 if d1 > 0 else 1e-3 * span
    return min(h * tol**0.2 / 1e-2, span)
