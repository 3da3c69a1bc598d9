"""Exception types raised across the package."""


class GaborError(Exception):
    """Base class for all library errors."""


class DivisibilityError(GaborError, ValueError):
    """Lattice parameters do not divide the signal length."""


class DimensionError(GaborError, ValueError):
    """Array shapes disagree with the lattice or with each other."""


class UnsupportedLatticeError(GaborError, ValueError):
    """The lattice density exceeds one where reconstruction is required."""


class SingularSystemError(GaborError, ValueError):
    """The Wexler-Raz constraint rows are rank deficient."""


class DegenerateInputError(GaborError, ValueError):
    """Input is identically zero where a nonzero value is required."""


class InvalidPairError(GaborError, ValueError):
    """Synthesis and analysis windows are not a dual pair."""


class ConfigurationError(GaborError, ValueError):
    """Experiment or command parameters are inconsistent."""


class InputError(GaborError, ValueError):
    """A data file is missing or malformed."""
