"""Exception hierarchy shared by every module.

Each class carries a stable ``code`` string; the CLI prints that code on
stderr so scripted callers can match on it without parsing messages.
"""

from __future__ import annotations


class EmlangError(Exception):
    """Base class for all data/validation errors raised by this package."""

    code = "Error"


class DocumentSyntaxError(EmlangError):
    """Malformed schema, corpus, or structured-report document."""

    code = "SyntaxError"


class UnknownReference(EmlangError):
    """An expression or lookup names a property that does not exist."""

    code = "UnknownReference"


class CycleError(EmlangError):
    """A hyperattribute references itself or a later-defined hyperattribute."""

    code = "CycleError"


class DomainError(EmlangError):
    """A value falls outside a declared domain, or a value map is not a bijection-by-cases."""

    code = "DomainError"


class LengthMismatch(EmlangError):
    code = "LengthMismatch"


class TokenOutOfRange(EmlangError):
    code = "TokenOutOfRange"


class AttributeMismatch(EmlangError):
    """Sample values do not line up with the schema's attributes."""

    code = "AttributeMismatch"


class EmptySample(EmlangError):
    """A frequency filter would leave a sample without any message."""

    code = "EmptySample"


class EmptyInput(EmlangError):
    code = "EmptyInput"


class EmptyCorpus(EmlangError):
    code = "EmptyCorpus"


class UnknownSample(EmlangError):
    code = "UnknownSample"


class ZeroVariance(EmlangError):
    """A correlation input is constant; reported instead of silently mapping to 0."""

    code = "ZeroVariance"


class CapacityError(EmlangError):
    """Message length or vocabulary too small for the requested construction."""

    code = "CapacityError"


class ConfigError(EmlangError):
    code = "ConfigError"


class NotFoundError(EmlangError):
    """An input path does not exist."""

    code = "NotFound"
