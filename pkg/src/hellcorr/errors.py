"""Exception types shared across the package."""


class HellcorrError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HellcorrError, ValueError):
    """A numeric argument is outside its mathematical domain."""


class SizeError(HellcorrError, ValueError):
    """Too few observations for the requested operation."""


class DegenerateDataError(HellcorrError, ValueError):
    """Input data carry no usable signal (zero variance, all-zero tables)."""


class CapabilityError(HellcorrError, ValueError):
    """A request exceeds a hard implementation limit (e.g. basis degree)."""


class ConfigError(HellcorrError, ValueError):
    """Malformed configuration, generator spec, or CLI arguments."""


class CacheMismatchError(HellcorrError, ValueError):
    """A cached null table does not match the requested sample size or pipeline settings."""


class DiagnosticsError(HellcorrError, RuntimeError):
    """A resampling procedure produced too many unusable replicates to trust its output."""
