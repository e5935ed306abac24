"""Exception hierarchy shared by every engine and the CLI."""


class ToricSplitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ToricSplitError, ValueError):
    """Malformed or out-of-range user input (complexes, maps, graphs)."""


class CoefficientError(ToricSplitError, ArithmeticError):
    """A value cannot be represented in the requested coefficient field."""


class ComplexIntegrityError(ToricSplitError):
    """A chain complex violates d∘d = 0 or a cell structure is inconsistent."""


class CapacityError(ToricSplitError):
    """A construction would exceed the configured size bounds."""


class DomainError(ToricSplitError, ValueError):
    """An operation was applied outside its mathematical domain."""
