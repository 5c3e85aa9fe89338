"""Entangled coherent states of the optical and microwave fields.

The state is ``N [cos(theta) |alpha>_o |0>_w + sin(theta) |0>_o |beta>_w]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateStateError, InvalidOverlapError, InvalidParameterError


@dataclass(frozen=True)
class EntangledCoherentState:
    theta: float
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not all(map(math.isfinite, (self.theta, abs(self.alpha), abs(self.beta)))):
            raise InvalidParameterError("state parameters must be finite")

    @classmethod
    def symmetric(cls, theta: float, amplitude: float, phase: float) -> "EntangledCoherentState":
        """State with ``alpha = beta = amplitude * exp(i phase)``."""
        a = cmath.rect(amplitude, phase)
        return cls(theta, a, a)

    @property
    def phase(self) -> float:
        return cmath.phase(self.alpha)

    @property
    def overlap_factor(self) -> float:
        """``<alpha|0><0|beta> = exp(-(|alpha|^2 + |beta|^2) / 2)``."""
        return math.exp(-(abs(self.alpha) ** 2 + abs(self.beta) ** 2) / 2)

    @property
    def inverse_norm_sq(self) -> float:
        return 1 + math.sin(2 * self.theta) * self.overlap_factor

    @property
    def normalization(self) -> float:
        return normalization(self)

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "alpha_re": self.alpha.real,
            "alpha_im": self.alpha.imag,
            "beta_re": self.beta.real,
            "beta_im": self.beta.imag,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EntangledCoherentState":
        return cls(
            d["theta"],
            complex(d["alpha_re"], d["alpha_im"]),
            complex(d["beta_re"], d["beta_im"]),
        )


@dataclass(frozen=True)
class FieldMeans:
    optical: complex
    microwave: complex


def _norm_sq(state: EntangledCoherentState) -> float:
    inv = state.inverse_norm_sq
    # relative guard: the two branches cancel up to rounding
    if inv <= 4 * 2.220446049250313e-16:
        raise DegenerateStateError(
            f"state with theta={state.theta}, alpha={state.alpha}, beta={state.beta} "
            "has vanishing norm"
        )
    return 1 / inv


def normalization(state: EntangledCoherentState) -> float:
    return math.sqrt(_norm_sq(state))


def concurrence(state: EntangledCoherentState) -> float:
    """Concurrence of the two-mode state, in ``[0, 1]``."""
    n2 = _norm_sq(state)
    a2, b2 = abs(state.alpha) ** 2, abs(state.beta) ** 2
    # expm1 keeps 1 - exp(-x) accurate for small amplitudes
    return abs(math.sin(2 * state.theta)) * math.sqrt(math.expm1(-a2) * math.expm1(-b2)) * n2


def generic_concurrence(mu: complex, nu: complex, p1: complex, p2: complex, N: float) -> float:
    """Concurrence of ``N [mu |eta>|gamma> + nu |xi>|delta>]``.

    Parameters
    ----------
    mu, nu : complex
        Branch amplitudes.
    p1, p2 : complex
        Overlaps ``<eta|xi>`` and ``<gamma|delta>`` of the subsystem states.
    N : float
        Normalization constant of the superposition.
    """
    if abs(p1) > 1 or abs(p2) > 1:
        raise InvalidOverlapError(f"overlaps must have magnitude <= 1, got {p1}, {p2}")
    if not N > 0:
        raise InvalidParameterError(f"normalization must be > 0, got {N}")
    return 2 * abs(mu) * abs(nu) * N**2 * math.sqrt((1 - abs(p1) ** 2) * (1 - abs(p2) ** 2))


def field_means(state: EntangledCoherentState) -> FieldMeans:
    """Initial mean amplitudes of the optical and microwave modes."""
    n2 = _norm_sq(state)
    cross = 0.5 * math.sin(2 * state.theta) * state.overlap_factor
    return FieldMeans(
        optical=state.alpha * n2 * (math.cos(state.theta) ** 2 + cross),
        microwave=state.beta * n2 * (math.sin(state.theta) ** 2 + cross),
    )
