"""Heisenberg-picture propagator of the linearized converter.

The mode operators evolve as linear combinations of the initial operators::

    b(t)   = f1 b   + f2 c_w  + f3 c_o^+
    c_o(t) = g1 c_o + g2 c_w^+ + g3 b^+
    c_w(t) = h1 c_w + h2 c_o^+ + h3 b

The nine coefficients are available in closed form and, independently, by
integrating their equations of motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import integrate
from .errors import InvalidParameterError
from .model import CouplingConfig

COEFFICIENT_NAMES = ("f1", "f2", "f3", "g1", "g2", "g3", "h1", "h2", "h3")
DEFAULT_DARK_TOL = 1e-10


@dataclass(frozen=True)
class PropagatorCoefficients:
    t: float
    f1: complex
    f2: complex
    f3: complex
    g1: complex
    g2: complex
    g3: complex
    h1: complex
    h2: complex
    h3: complex

    @classmethod
    def from_array(cls, t: float, values) -> "PropagatorCoefficients":
        return cls(float(t), *(complex(v) for v in values))

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in COEFFICIENT_NAMES], dtype=complex)

    def commutator_residuals(self) -> dict[str, float]:
        """Deviation of each equal-time commutator from its canonical value.

        The first three are ``[a, a^+] - 1`` for the mechanical, optical and
        microwave modes; the last two are ``[b, c_o]`` and ``[b, c_w^+]``,
        which must vanish.
        """
        return commutator_residuals(self.as_array())


def commutator_residuals(c: np.ndarray) -> dict[str, float]:
    f1, f2, f3, g1, g2, g3, h1, h2, h3 = c
    a = np.abs
    return {
        "mechanical": float(abs(a(f1) ** 2 + a(f2) ** 2 - a(f3) ** 2 - 1)),
        "optical": float(abs(a(g1) ** 2 - a(g2) ** 2 - a(g3) ** 2 - 1)),
        "microwave": float(abs(a(h1) ** 2 - a(h2) ** 2 + a(h3) ** 2 - 1)),
        "b_co": float(abs(f1 * g3 + f2 * g2 - f3 * g1)),
        "b_cw_dag": float(abs(f1 * np.conj(h3) + f2 * np.conj(h1) - f3 * np.conj(h2))),
    }


def identity_coefficients(t: float = 0.0) -> PropagatorCoefficients:
    return PropagatorCoefficients(t, 1, 0, 0, 1, 0, 0, 1, 0, 0)


def closed_form_array(cfg: CouplingConfig, t) -> np.ndarray:
    """Vectorized closed form. Returns shape ``t.shape + (9,)``."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise InvalidParameterError("t must be >= 0")
    k = cfg.k
    one_m_k2 = 1.0 - k * k
    root = math.sqrt(one_m_k2)
    c = np.cos(cfg.omega * t)
    s = np.sin(cfg.omega * t)
    f2 = -1j * s / root
    out = np.empty(t.shape + (9,), dtype=complex)
    out[..., 0] = c
    out[..., 1] = f2
    out[..., 2] = k * f2
    out[..., 3] = (1 - k * k * c) / one_m_k2
    out[..., 4] = k * (1 - c) / one_m_k2
    out[..., 5] = -1j * k * s / root
    out[..., 6] = (c - k * k) / one_m_k2
    out[..., 7] = k * (c - 1) / one_m_k2
    out[..., 8] = -1j * s / root
    return out


def closed_form_propagator(cfg: CouplingConfig, t: float) -> PropagatorCoefficients:
    return PropagatorCoefficients.from_array(t, closed_form_array(cfg, t))


def coefficient_system(cfg: CouplingConfig) -> tuple[np.ndarray, np.ndarray]:
    """Matrices ``(M, P)`` such that the coefficient vector obeys ``y' = M y + P conj(y)``.

    Ordering follows ``COEFFICIENT_NAMES``.
    """
    Go, Gw = cfg.G_o, cfg.G_w
    ix = {n: i for i, n in enumerate(COEFFICIENT_NAMES)}
    M = np.zeros((9, 9), dtype=complex)
    P = np.zeros((9, 9), dtype=complex)
    # b-row: coupled to conj(g) through c_o^+, to h through c_w
    for f, g, h in (("f1", "g3", "h3"), ("f2", "g2", "h1"), ("f3", "g1", "h2")):
        P[ix[f], ix[g]] = -1j * Go
        M[ix[f], ix[h]] = -1j * Gw
    for g, f in (("g1", "f3"), ("g2", "f2"), ("g3", "f1")):
        P[ix[g], ix[f]] = -1j * Go
    for h, f in (("h1", "f2"), ("h2", "f3"), ("h3", "f1")):
        M[ix[h], ix[f]] = -1j * Gw
    return M, P


def ode_trajectory(
    cfg: CouplingConfig, times: Sequence[float], tol: float = 1e-10
) -> np.ndarray:
    """Integrate the coefficient equations from the identity; one row per time."""
    if not 0 < tol <= 1e-4:
        raise InvalidParameterError(f"tolerance must be in (0, 1e-4], got {tol}")
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise InvalidParameterError("t must be >= 0")
    order = np.argsort(times, kind="stable")
    M, P = coefficient_system(cfg)

    def rhs(_t, y):
        return M @ y + P @ np.conj(y)

    y0 = identity_coefficients().as_array()
    grid = np.concatenate(([0.0], times[order]))
    # local bound a decade tighter so error accumulated over a few periods stays below tol
    sol = integrate.solve(rhs, y0, grid, tol=0.1 * tol)[1:]
    out = np.empty_like(sol)
    out[order] = sol
    return out


def ode_propagator(cfg: CouplingConfig, t: float, tol: float = 1e-10) -> PropagatorCoefficients:
    return PropagatorCoefficients.from_array(t, ode_trajectory(cfg, [t], tol)[0])


def dark_mode_coefficients(k: float, t: float = math.nan) -> PropagatorCoefficients:
    """Exact coefficients at any odd multiple of ``pi / Omega``."""
    one_m_k2 = 1 - k * k
    g1 = (1 + k * k) / one_m_k2
    g2 = 2 * k / one_m_k2
    return PropagatorCoefficients(t, -1, 0, 0, g1, g2, 0, -g1, -g2, 0)


@dataclass(frozen=True)
class DarkModeRecord:
    n: int
    t: float
    coefficients: PropagatorCoefficients


def dark_mode_times(cfg: CouplingConfig, count: int) -> list[DarkModeRecord]:
    """The first ``count`` dark-mode instants ``t_n = n pi / Omega`` for odd ``n``.

    Even multiples return the propagator to the identity and convert nothing,
    so only odd ``n`` are listed.
    """
    if int(count) != count or count < 1:
        raise InvalidParameterError(f"count must be a positive integer, got {count}")
    records = []
    for i in range(int(count)):
        n = 2 * i + 1
        t = cfg.dark_time(n)
        c = dark_mode_coefficients(cfg.k, t)
        records.append(DarkModeRecord(n, t, c))
    return records


def is_dynamically_dark(coeffs: PropagatorCoefficients, tol: float = DEFAULT_DARK_TOL) -> bool:
    """True when none of the field modes carries a mechanical component."""
    if not tol > 0:
        raise InvalidParameterError("tol must be > 0")
    return max(abs(coeffs.g3), abs(coeffs.h3), abs(coeffs.f2), abs(coeffs.f3)) < tol
