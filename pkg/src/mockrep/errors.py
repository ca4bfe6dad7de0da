"""Exception taxonomy shared by the library, the CLI and the service."""


class MockrepError(Exception):
    """Base class for all library errors."""


class ParameterError(MockrepError):
    """Invalid system identifier or system parameters."""


class PreconditionError(MockrepError):
    """An operation precondition was violated (bad budget, wrong field type, ...)."""


class DomainError(MockrepError):
    """A point lies outside the domain the operation is defined on."""


class ConfigurationError(MockrepError):
    """Missing truncation/resolution data needed to carry out a computation."""


class CoverageError(MockrepError):
    """A quadrature domain does not cover the support of the integrand."""


class UnsupportedSystemError(MockrepError):
    """The system does not carry the structure required by the operation."""
