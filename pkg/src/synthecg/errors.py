"""Exception types shared across the package."""


class SynthEcgError(Exception):
    """Base class for all package errors."""


class ConfigError(SynthEcgError):
    """Invalid configuration: bad ranges, flags, or file contents."""


class DegenerateRangeError(ConfigError):
    """A parameter range that the weighted scaling rule cannot handle."""


class DataFormatError(SynthEcgError):
    """A data file does not match the documented format contract."""
