"""Exception types shared across the package.

All of them derive from ValueError so callers that do not care about the
distinction can catch one base class.  The CLI maps them onto exit codes.
"""


class DimensionError(ValueError):
    """Matrix or index dimensions are inconsistent or out of range."""


class ParameterError(ValueError):
    """A state-family parameter lies outside its admissible interval."""


class HermiticityError(ValueError):
    """An operand required to be Hermitian is not, beyond tolerance."""


class UnitarityError(ValueError):
    """An operand required to be unitary is not, beyond tolerance."""


class SingularityError(ValueError):
    """A matrix required to have full rank is numerically rank deficient."""


class PhysicalityError(ValueError):
    """An operator fails the density-matrix checks (Hermitian, trace one, PSD)."""


class StateFileError(ValueError):
    """A state file cannot be parsed into a density matrix."""
