"""Heisenberg-picture dynamics, dark modes and conversion rates of an
electro-optomechanical microwave-optical converter, with ODE and Fock-space oracles."""

__version__ = "0.1.0"

from .model import ChannelId, CouplingConfig, DriveParams, ChannelDrive, make_coupling_config
from .model import intracavity_photon_number, multiphoton_coupling
from .dynamics import (
    PropagatorCoefficients,
    DarkModeRecord,
    closed_form_propagator,
    ode_propagator,
    dark_mode_times,
    is_dynamically_dark,
)
from .states import EntangledCoherentState, FieldMeans, normalization, concurrence, generic_concurrence, field_means
from .conversion import (
    Direction,
    ConversionReport,
    EafReport,
    Regime,
    general_rate,
    cqc_rate,
    eaqc_rate,
    eaqc_max_entangled,
    eaf,
    critical_coupling,
)

__all__ = [
    "ChannelId",
    "CouplingConfig",
    "DriveParams",
    "ChannelDrive",
    "make_coupling_config",
    "intracavity_photon_number",
    "multiphoton_coupling",
    "PropagatorCoefficients",
    "DarkModeRecord",
    "closed_form_propagator",
    "ode_propagator",
    "dark_mode_times",
    "is_dynamically_dark",
    "EntangledCoherentState",
    "FieldMeans",
    "normalization",
    "concurrence",
    "generic_concurrence",
    "field_means",
    "Direction",
    "ConversionReport",
    "EafReport",
    "Regime",
    "general_rate",
    "cqc_rate",
    "eaqc_rate",
    "eaqc_max_entangled",
    "eaf",
    "critical_coupling",
]
