"""Exception hierarchy shared across the package."""

from __future__ import annotations


class AdaptOptError(Exception):
    """Base class for all errors raised by this package."""


class WorkflowParseError(AdaptOptError):
    """The XML document is not well formed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class WorkflowSchemaError(AdaptOptError):
    """Well-formed XML that does not match the workflow document format."""


class WorkflowValidationError(AdaptOptError):
    """A structurally complete workflow violates a model invariant."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class UnknownElementError(AdaptOptError, LookupError):
    """An element id does not resolve to any declared workflow element."""


class PropertyTypeError(AdaptOptError, TypeError):
    """A property value does not match its declared value type."""


class MissingPropertyError(AdaptOptError, LookupError):
    """A required property is absent from a workflow element."""

    def __init__(self, element_id: str, key: str):
        super().__init__(f"element '{element_id}' has no property '{key}'")
        self.element_id = element_id
        self.key = key


class EncodingError(AdaptOptError, ValueError):
    """A genotype does not conform to its multi-encoding specification."""


class AssemblyError(AdaptOptError):
    """Problem assembly failed (bad registry, appender failure, ...)."""


class EvaluationError(AdaptOptError):
    """A fitness calculator failed on a decoded workflow."""


class ContractError(AdaptOptError, ValueError):
    """An operation was called outside its documented contract."""


class ConfigError(AdaptOptError):
    """A run configuration file or value is invalid."""


class InstanceTableError(AdaptOptError):
    """An instance metrics table is malformed or inconsistent."""
