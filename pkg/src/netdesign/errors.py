"""Exception hierarchy shared across the package.

Every anticipated failure mode maps to one subclass so the CLI can
translate exception classes into distinct exit codes.
"""


class NetdesignError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(NetdesignError):
    """Instance text or a rational token could not be parsed."""


class ValidationError(NetdesignError):
    """Parsed data violates a model invariant."""


class DomainError(NetdesignError):
    """Argument lies outside the mathematical domain of a function."""


class BudgetError(NetdesignError):
    """Enumeration would exceed the configured budget."""

    def __init__(self, message, size=None, budget=None):
        super().__init__(message)
        self.size = size
        self.budget = budget


class StructureError(NetdesignError):
    """A structural precondition on a profile or decomposition fails."""


class GenerationError(NetdesignError):
    """Random instance generation gave up after bounded retries."""


class VerificationError(NetdesignError):
    """A checked inequality was measured false.

    Carries the full report so a violation can be triaged offline.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class LemmaViolation(VerificationError):
    """One of the three deviation-profile inequalities failed."""


class AggregateViolation(VerificationError):
    """One of the aggregate level inequalities failed."""
