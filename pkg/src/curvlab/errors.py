"""Exception types shared across the package."""


class CurvlabError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(CurvlabError):
    """Malformed expression text. Carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(CurvlabError):
    """Identifier not declared in the owning chart's coordinate list."""

    def __init__(self, name: str, offset: int = -1):
        super().__init__(f"unknown identifier {name!r}")
        self.name = name
        self.offset = offset


class RingError(CurvlabError):
    """Operation not supported by the requested scalar ring."""


class EvalDomainError(CurvlabError):
    """Singular input to an elementary function (division by zero, log of
    a non-positive value, sqrt of a negative value)."""


class ManifoldFormatError(CurvlabError):
    """Malformed manifold definition file. Carries a byte offset when the
    failure is attributable to a specific location."""

    def __init__(self, message: str, offset: int = -1):
        if offset >= 0:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class SingularMetricError(CurvlabError):
    """Metric not invertible (or not positive definite) at a point."""


class SamplingError(CurvlabError):
    """Chart domain admits no sample window."""


class RegistryError(CurvlabError):
    """Unknown or malformed registry target."""
