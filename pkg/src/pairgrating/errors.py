"""Exception and warning types shared across the package."""


class ParameterError(ValueError):
    """A parameter violates its documented domain (sign, parity, range)."""


class ResolutionError(ParameterError):
    """The sampling grid is too coarse to resolve the grating period."""


class DegenerateInputError(ValueError):
    """An input carries no information (for example an identically zero amplitude)."""


class MeasurementFormatError(ValueError):
    """A measurement file could not be parsed; the message names the offending line."""


class ConfigError(ValueError):
    """A scenario config entry is unknown, malformed, or violates an invariant."""


class SamplingWarning(UserWarning):
    """A model length scale fell below the grid resolution; results degrade gracefully."""


class BinSnapWarning(UserWarning):
    """A requested angular quantity was rounded to the nearest grid bin."""
