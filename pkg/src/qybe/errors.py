"""Exception types raised across the package."""


class QybeError(Exception):
    """Base class for all library errors."""


class ParameterDomainError(QybeError):
    """An input value lies outside the domain an operation supports."""


class DegenerateDenominator(QybeError):
    """q - 1/q is numerically zero; q-numbers are undefined."""


class WrongMode(QybeError):
    """Operation requires the other deformation-parameter mode."""


class BadSpin(QybeError):
    """Twice the spin must be a nonnegative integer."""


class DimensionMismatch(QybeError):
    """Tensor factors are incompatible (dimension or deformation parameter)."""


class CompletenessFailure(QybeError):
    """Collected eigenvectors do not span the full tensor product space."""


class PoleAtSector(QybeError):
    """Spectral parameter sits at a pole of the R-operator."""

    def __init__(self, sector: int, message: str | None = None):
        self.sector = sector
        super().__init__(message or f"denominator vanishes at sector {sector}")


class SingularBasis(QybeError):
    """Eigenvector matrix is numerically rank-deficient."""


class UnsupportedPair(QybeError):
    """No closed-form matrix is tabulated for this spin pair."""


class NotScalar(QybeError):
    """A matrix that must be a multiple of the identity is not."""


class OrderMismatch(QybeError):
    """Cyclic tensor factors must share the same root-of-unity order."""


class ShiftLawViolation(QybeError):
    """A cyclic eigenstate shift relation fails beyond tolerance."""

    def __init__(self, relation: str, m: int, residual: float, message: str | None = None):
        self.relation = relation
        self.m = m
        self.residual = residual
        super().__init__(
            message or f"shift relation '{relation}' fails at m={m} (residual {residual:.3e})"
        )


class InconsistentConstraints(QybeError):
    """The two defining relations of the partial R conflict on the joint span."""
