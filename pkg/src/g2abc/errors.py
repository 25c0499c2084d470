"""Exception types shared across the package."""


class G2ABCError(ValueError):
    """Base class for all validation and computation errors."""


class DegreeError(G2ABCError):
    """Form degree out of range for the requested operation."""


class MetricError(G2ABCError):
    """Metric fails a structural requirement (symmetry, positivity, frame)."""


class PositivityError(G2ABCError):
    """A 3-form is not positive: it does not induce a Riemannian metric."""


class ValidationError(G2ABCError):
    """Input data violates a declared invariant."""


class TorsionSolveError(G2ABCError):
    """The contraction system defining the full torsion tensor is inconsistent."""
