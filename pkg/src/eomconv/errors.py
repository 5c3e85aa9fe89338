"""Exception hierarchy.

Each class maps onto one CLI exit code so the front end can translate
failures without inspecting messages.
"""


class EomError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 1


class InvalidParameterError(EomError, ValueError):
    pass


class InvalidChannelError(InvalidParameterError):
    pass


class UnsupportedRegimeError(InvalidParameterError):
    """Raised for ``G_o >= G_w``, where the coefficient functions turn hyperbolic."""


class DegenerateStateError(InvalidParameterError):
    """The superposition cancels (``N**-2 <= 0``) and cannot be normalized."""


class InvalidOverlapError(InvalidParameterError):
    pass


class UndefinedRateError(InvalidParameterError):
    """The input-channel mean amplitude vanishes, so the rate ratio is undefined."""


class PreconditionError(InvalidParameterError):
    pass


class DegenerateRatioError(InvalidParameterError):
    pass


class IntegrationError(EomError, RuntimeError):
    """Adaptive integration gave up.

    Attributes
    ----------
    last_time : float
        Last time point the integrator accepted.
    """

    exit_code = 2

    def __init__(self, message: str, last_time: float):
        super().__init__(f"{message} (last good t={last_time!r})")
        self.last_time = last_time


class TruncationError(EomError):
    """Coherent-state weight above the Fock cutoff exceeds the allowed leakage."""

    exit_code = 3

    def __init__(self, message: str, leakage: float):
        super().__init__(f"{message} (leakage={leakage:.3e})")
        self.leakage = leakage


class ResourceLimitError(EomError):
    exit_code = 3


class VerificationError(EomError):
    """A dataset failed one of its emission-time consistency checks."""

    exit_code = 2
