"""Exception types shared across the package."""


class SpmulError(Exception):
    """Base class for all library errors."""


class RingMismatchError(SpmulError):
    """Operands live in different coefficient rings."""


class CharacteristicTooSmallError(SpmulError):
    """The field characteristic is too small for exponent recovery."""


class RetryBudgetError(SpmulError):
    """A randomized search exhausted its retry budget (pathological RNG)."""


class UnsupportedRingError(SpmulError):
    """The requested operation is not available over this ring."""


class PolyFileError(SpmulError):
    """A polynomial file is malformed or non-canonical."""
