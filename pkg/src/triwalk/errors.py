"""Exception hierarchy shared across the package."""


class TriwalkError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TriwalkError):
    """Model parameters fail a validity requirement."""


class DegeneracyError(ValidationError):
    """p1*p4 == p2*p3; the field formula and the weights are singular."""


class DomainError(TriwalkError):
    """A site or quantum-number pair lies outside the triangular domain."""


class RestrictionError(TriwalkError):
    """A parameter restriction required by an operation does not hold."""


class SizeError(TriwalkError):
    """A size guard was exceeded (exponential or otherwise infeasible input)."""


class ConfigError(TriwalkError):
    """Bad command-line, config-file, or environment configuration."""
