# algebra/errors.py


class CaratheodoryError(Exception):
    """Base class for every error raised by the verification library."""


class ContractViolation(CaratheodoryError, ValueError):
    """A caller broke a precondition: mixed groups, empty probe, bad radius, invalid payload."""


class UnsupportedOperation(CaratheodoryError, NotImplementedError):
    """The group (or slope) lacks the structure an operation needs."""


class ConfigurationError(CaratheodoryError):
    """Unknown registry key, invalid configuration value or failing sampler."""


class EstimationError(CaratheodoryError):
    """A numerical estimate could not be formed from the samples drawn."""
