"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed word / automorphism / certificate text."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class IndexOutOfRange(ValueError):
    """A generator or tuple index falls outside the declared range."""


class IndexEscape(ValueError):
    """An image uses a generator index beyond the declared support width."""


class NotInjectiveOrNotSurjective(ValueError):
    """The given images do not freely generate the expected subgroup."""


class RangeOverlap(ValueError):
    """Swap ranges would overlap (requires m' >= 2n)."""


class CapExceeded(ValueError):
    """Requested rank exceeds the configured hard cap."""


class SearchBudgetExceeded(RuntimeError):
    """A bounded search ran out of budget: an honest "don't know"."""

    def __init__(self, budget, explored):
        super().__init__(
            f"peak search exhausted its budget ({explored} tuples explored, budget {budget})"
        )
        self.budget = budget
        self.explored = explored


class NotAPartialBasisError(RuntimeError):
    """The tuple does not extend to a basis, so no complement exists."""


class InternalVerificationFailure(RuntimeError):
    """An internally produced object failed its own validation; a bug."""
