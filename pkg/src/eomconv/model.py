"""Physical parameters of the electro-optomechanical converter.

The linearized dynamics depend on the two multiphoton couplings only through
the ratio ``k = G_o / G_w`` and the oscillation frequency
``Omega = sqrt(G_w**2 - G_o**2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import InvalidChannelError, InvalidParameterError, UnsupportedRegimeError


class ChannelId(enum.Enum):
    OPTICAL = "optical"
    MICROWAVE = "microwave"
    MECHANICAL = "mechanical"

    @property
    def is_field(self) -> bool:
        return self is not ChannelId.MECHANICAL


@dataclass(frozen=True)
class ChannelDrive:
    """Drive and cavity parameters of one field channel (angular-frequency units)."""

    drive_amplitude: float
    detuning: float
    cavity_decay: float
    single_photon_coupling: float

    def __post_init__(self):
        if not self.cavity_decay > 0:
            raise InvalidParameterError(f"cavity_decay must be > 0, got {self.cavity_decay}")
        if self.drive_amplitude < 0:
            raise InvalidParameterError(f"drive_amplitude must be >= 0, got {self.drive_amplitude}")
        if self.single_photon_coupling < 0:
            raise InvalidParameterError(
                f"single_photon_coupling must be >= 0, got {self.single_photon_coupling}"
            )


@dataclass(frozen=True)
class DriveParams:
    optical: ChannelDrive
    microwave: ChannelDrive

    def channel(self, j: ChannelId) -> ChannelDrive:
        if j is ChannelId.OPTICAL:
            return self.optical
        if j is ChannelId.MICROWAVE:
            return self.microwave
        raise InvalidChannelError(f"{j} has no drive; only field channels are driven")


def intracavity_photon_number(p: DriveParams, j: ChannelId) -> float:
    """Mean intracavity photon number ``|E|^2 / (kappa^2 + Delta^2)`` induced by the pump."""
    c = p.channel(j)
    if not c.cavity_decay > 0:
        raise InvalidParameterError("cavity_decay must be > 0")
    return abs(c.drive_amplitude) ** 2 / (c.cavity_decay**2 + c.detuning**2)


def multiphoton_coupling(p: DriveParams, j: ChannelId) -> float:
    """Pump-enhanced coupling ``g * sqrt(N)``."""
    return p.channel(j).single_photon_coupling * math.sqrt(intracavity_photon_number(p, j))


@dataclass(frozen=True)
class CouplingConfig:
    """Multiphoton couplings of the optical (``G_o``) and microwave (``G_w``) cavities.

    Only the oscillatory regime ``0 <= k < 1`` is accepted.
    """

    G_o: float
    G_w: float
    k: float = field(init=False)
    omega: float = field(init=False)

    def __post_init__(self):
        G_o, G_w = float(self.G_o), float(self.G_w)
        if not (math.isfinite(G_o) and math.isfinite(G_w)):
            raise InvalidParameterError("couplings must be finite")
        if not G_w > 0:
            raise InvalidParameterError(f"G_w must be > 0, got {G_w}")
        if G_o < 0:
            raise InvalidParameterError(f"G_o must be >= 0, got {G_o}")
        if G_o >= G_w:
            raise UnsupportedRegimeError(
                f"G_o={G_o} >= G_w={G_w}: k >= 1 gives hyperbolic dynamics, not supported"
            )
        k = G_o / G_w
        object.__setattr__(self, "G_o", G_o)
        object.__setattr__(self, "G_w", G_w)
        object.__setattr__(self, "k", k)
        # (G_w - G_o)(G_w + G_o) keeps precision as k -> 1
        object.__setattr__(self, "omega", math.sqrt((G_w - G_o) * (G_w + G_o)))

    @classmethod
    def from_ratio(cls, k: float, G_w: float = 1.0) -> "CouplingConfig":
        check_ratio(k)
        return cls(k * G_w, G_w)

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega

    def dark_time(self, n: int) -> float:
        return n * math.pi / self.omega


def make_coupling_config(G_o: float, G_w: float) -> CouplingConfig:
    return CouplingConfig(G_o, G_w)


def check_ratio(k: float) -> float:
    """Validate a coupling ratio, returning it as float."""
    k = float(k)
    if not math.isfinite(k) or k < 0:
        raise InvalidParameterError(f"coupling ratio must be in [0, 1), got {k}")
    if k >= 1:
        raise UnsupportedRegimeError(f"coupling ratio k={k} >= 1 is not supported")
    return k
