"""Conversion rates between the optical and microwave fields at dark-mode times.

Rates are squared ratios of mean amplitudes, so they can exceed 1: the
optical-side coupling is a two-mode-squeezing term and amplifies.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .dynamics import DEFAULT_DARK_TOL, PropagatorCoefficients, dark_mode_coefficients, is_dynamically_dark
from .errors import DegenerateRatioError, PreconditionError, UndefinedRateError
from .model import check_ratio
from .states import FieldMeans

# Regime classification band around R = 1.
NEUTRAL_BAND = 1e-12


class Direction(enum.Enum):
    OPTICAL_TO_MICROWAVE = "o2w"
    MICROWAVE_TO_OPTICAL = "w2o"

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        aliases = {"ow": cls.OPTICAL_TO_MICROWAVE, "wo": cls.MICROWAVE_TO_OPTICAL}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise PreconditionError(f"unknown direction {value!r}") from None


class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    COEFFICIENT_BASED = "coefficient-based"
    FOCK_ORACLE = "fock-oracle"


@dataclass(frozen=True)
class ConversionReport:
    direction: Direction
    rate: float
    dark_mode_index: int
    k: float
    method: Method


class Regime(enum.Enum):
    ENHANCING = "enhancing"
    SUPPRESSING = "suppressing"
    NEUTRAL = "neutral"

    @classmethod
    def classify(cls, R: float) -> "Regime":
        if R < 1 - NEUTRAL_BAND:
            return cls.ENHANCING
        if R > 1 + NEUTRAL_BAND:
            return cls.SUPPRESSING
        return cls.NEUTRAL


@dataclass(frozen=True)
class EafReport:
    phi: float
    k: float
    R: float
    regime: Regime


def _coupling_ratio(coeffs: PropagatorCoefficients) -> float:
    # at a dark time g2 / g1 = 2k / (1 + k^2); invert for reporting
    if coeffs.g1 == 0:
        return math.nan
    r = abs(coeffs.g2 / coeffs.g1)
    return 0.0 if r == 0 else (1 - math.sqrt(max(0.0, 1 - r * r))) / r


def general_rate(
    coeffs: PropagatorCoefficients,
    means: FieldMeans,
    direction=Direction.OPTICAL_TO_MICROWAVE,
    n: int = 1,
    tol: float = DEFAULT_DARK_TOL,
    method: Method = Method.COEFFICIENT_BASED,
) -> ConversionReport:
    """Rate from dark-time coefficients and arbitrary initial mean amplitudes.

    Raises
    ------
    PreconditionError
        If ``coeffs`` still couple to the mechanical mode.
    UndefinedRateError
        If the input channel's initial mean is zero.
    """
    direction = Direction.parse(direction)
    if not is_dynamically_dark(coeffs, tol):
        raise PreconditionError(f"coefficients at t={coeffs.t} are not dynamically dark")
    if direction is Direction.OPTICAL_TO_MICROWAVE:
        src, other, a, b = means.optical, means.microwave, coeffs.h1, coeffs.h2
    else:
        src, other, a, b = means.microwave, means.optical, coeffs.g1, coeffs.g2
    if src == 0:
        raise UndefinedRateError(f"input-channel mean vanishes for {direction.value}")
    amp = a * other / src + b * src.conjugate() / src
    return ConversionReport(direction, abs(amp) ** 2, n, _coupling_ratio(coeffs), method)


def cqc_rate(k: float) -> float:
    """Conditional conversion rate ``4 k^2 / (1 - k^2)^2``; the same in both directions."""
    k = check_ratio(k)
    return (2 * k / (1 - k * k)) ** 2


def eaqc_rate(k: float, theta: float, phi: float, amplitude: float, direction=Direction.OPTICAL_TO_MICROWAVE) -> float:
    """Rate for the symmetric entangled coherent input ``alpha = beta = |alpha| e^{i phi}``."""
    k = check_ratio(k)
    direction = Direction.parse(direction)
    c = dark_mode_coefficients(k)
    overlap = math.exp(-amplitude * amplitude)
    cos_side = 2 * math.cos(theta) ** 2 + math.sin(2 * theta) * overlap
    sin_side = 2 * math.sin(theta) ** 2 + math.sin(2 * theta) * overlap
    if direction is Direction.OPTICAL_TO_MICROWAVE:
        num, den, a, b = sin_side, cos_side, c.h1, c.h2
    else:
        num, den, a, b = cos_side, sin_side, c.g1, c.g2
    # a zero denominator bracket also zeroes the input mean, up to rounding
    if abs(den) <= 1e-15:
        raise UndefinedRateError(f"input-channel mean vanishes at theta={theta} for {direction.value}")
    return abs(a * num / den + b * cmath.exp(-2j * phi)) ** 2


def eaqc_max_entangled(k: float, phi: float) -> float:
    """Rate for ``theta = pi/4``; identical for both directions and any amplitude."""
    k = check_ratio(k)
    return abs(1 + k * k + 2 * k * cmath.exp(-2j * phi)) ** 2 / (1 - k * k) ** 2


def eaf(k: float, phi: float) -> EafReport:
    """Entanglement-affecting factor: unentangled over maximally entangled rate."""
    k = check_ratio(k)
    if k == 0:
        raise DegenerateRatioError("the factor is degenerate at k = 0 (both rates vanish or are trivial)")
    R = cqc_rate(k) / eaqc_max_entangled(k, phi)
    return EafReport(phi, k, R, Regime.classify(R))


def critical_coupling(lo: float = 0.1, hi: float = 0.5, xtol: float = 1e-12) -> float:
    """Coupling ratio at which entanglement stops helping for ``phi = pi/2``.

    Bisection on ``R(pi/2) - 1``, which is increasing on ``[lo, hi]``.
    ``xtol=0`` bisects down to adjacent floats.
    """

    def f(k):
        return eaf(k, math.pi / 2).R - 1

    f_lo = f(lo)
    if f_lo * f(hi) > 0:
        raise PreconditionError(f"no sign change of R(pi/2) - 1 on [{lo}, {hi}]")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break  # interval exhausted at float resolution
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
