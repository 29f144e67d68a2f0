"""Exception hierarchy for monodromy_lab."""


class MonodromyLabError(Exception):
    """Base class for all library errors."""


class ContourSingularityError(MonodromyLabError):
    """A quadrature node of a closed contour hit a non-finite value."""

    def __init__(self, node, message=None):
        self.node = node
        super().__init__(message or f"non-finite integrand value at contour node {node}")


class NonIntegrableEndpointError(MonodromyLabError):
    """Partial sums of an endpoint-singular integral failed the Cauchy test."""


class PoleError(MonodromyLabError):
    """Evaluation requested at a pole (e.g. gamma at a non-positive integer)."""


class OutOfDiskError(MonodromyLabError):
    """Germ evaluation requested outside its trust disk."""


class StepViolationError(MonodromyLabError):
    """A recentering step exceeded the step-policy bound."""


class PathClearanceError(MonodromyLabError):
    """A continuation path passes too close to a singularity."""


class AccuracyLossError(MonodromyLabError):
    """Accumulated error estimate exceeded the configured ceiling."""


class InvalidAnnulusError(MonodromyLabError):
    """Contour radius violates the |z|/R_G < r < R_F constraint."""


class UnsupportedDepthError(MonodromyLabError):
    """Nested convolution requested beyond the supported factor count."""


class DegenerateCaseError(MonodromyLabError):
    """Closed-form formula not valid for these (degenerate) parameters."""


class DomainError(MonodromyLabError):
    """Argument outside the operation's domain of definition."""


class RegistryError(MonodromyLabError):
    """Unknown experiment name."""

    def __init__(self, name, known):
        self.name = name
        self.known = tuple(known)
        super().__init__(
            f"unknown experiment {name!r}; available: {', '.join(self.known)}"
        )
