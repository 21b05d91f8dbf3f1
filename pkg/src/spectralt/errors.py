"""Shared exception types."""


class SpectralTError(Exception):
    """Base class for library errors."""


class InputError(SpectralTError):
    """Malformed input (bad token, bad parameters, parse failure)."""


class ResourceCapError(SpectralTError):
    """A requested enumeration or eigensolve exceeds the configured cap."""


class DegenerateGraphError(SpectralTError):
    """Graph has isolated vertices where a positive degree is required."""


class HypothesisViolation(SpectralTError):
    """An empirical-check input fails a stated hypothesis; names the clause."""
