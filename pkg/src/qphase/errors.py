"""Exception types raised by the estimation library."""


class EstimationError(Exception):
    """Base class for all library-specific errors."""


class InvalidVector(EstimationError):
    """A Bloch vector or rotation axis violates its norm constraints."""


class DegenerateProbe(EstimationError):
    """Probe carries no phase information (quantum Fisher information ~ 0)."""


class MixedProbe(EstimationError):
    """Operation requires a pure probe (unit Bloch vector)."""


class SingularFisher(EstimationError):
    """Fisher information is 0/0 at the queried point."""


class InvalidDirection(EstimationError):
    """Covariant POVM direction is not orthogonal to the axis or too long."""


class QuadratureFailure(EstimationError):
    """Adaptive quadrature did not reach the requested tolerance."""


class EmptyDomain(EstimationError):
    """Maximization requested over an empty circular interval."""


class InsufficientBudget(EstimationError):
    """Probe budget is smaller than the first-stage sample size."""


class EmptySample(EstimationError):
    """Statistic of an empty sample requested."""


class UndefinedVariance(EstimationError):
    """Circular first moment too small for a meaningful Holevo variance."""


class DegenerateMoment(EstimationError):
    """First moment underflowed; variance cannot be formed."""


class ConfigError(EstimationError):
    """Scenario configuration is inconsistent or incomplete."""
