"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CovolCertError(Exception):
    """Base class for every error raised by the engine."""


class DivisionByEnclosedZero(CovolCertError, ZeroDivisionError):
    """The divisor interval contains zero."""


class DomainError(CovolCertError, ValueError):
    """A root or logarithm was requested of an enclosure that is not positive."""


class InconsistentLocalCase(CovolCertError, ValueError):
    """A local case contradicts the group data it is attached to."""


class InconsistentInput(CovolCertError, ValueError):
    """Discriminant data do not match the inner/outer form of the group."""


class SExponentDegenerate(CovolCertError, ValueError):
    """The quasi-split exponent is too small for the relative discriminant bound."""


class MissingDiscriminantOverride(CovolCertError, ValueError):
    """A minimal discriminant from field data is needed but was not supplied."""


class SizeLimitExceeded(CovolCertError):
    """A brute-force enumeration would exceed its configured size limit."""


class ParseError(CovolCertError, ValueError):
    """A snapshot line is not valid JSON."""


class SchemaError(CovolCertError, ValueError):
    """A snapshot object does not satisfy the documented schema."""


class DuplicateLabel(SchemaError):
    """Two snapshot records share a label."""


class NoData(CovolCertError, LookupError):
    """The snapshot holds no record for the requested signature."""


class MissingSnapshot(CovolCertError):
    """A data-dependent computation was requested without a snapshot."""
