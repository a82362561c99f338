"""Shared exception types."""


class CrlabError(Exception):
    pass


class ParameterError(CrlabError, ValueError):
    """Invalid constructor or operation parameter."""


class DomainError(CrlabError, ValueError):
    """Evaluation requested outside the stated domain."""


class ConfigurationError(CrlabError, ValueError):
    """Inconsistent solver configuration (e.g. grid too small)."""


class InsufficientDataError(CrlabError, ValueError):
    """Too few valid samples to produce an estimate."""


class DegenerateMapError(CrlabError, ValueError):
    """Map candidate is not a valid local biholomorphism."""
