"""Exception types shared across the package."""


class DldError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DldError):
    """Malformed input text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class UndeclaredName(DldError):
    """A spot, field or atom name not declared in the universe."""


class NonDeterministicState(DldError):
    """An operation that requires a deterministic linkage got a non-deterministic one."""


class BudgetExhausted(DldError):
    """Thread unfolding did not finish within the step budget."""


class UnknownFocus(DldError):
    """A thread performed an action whose focus has no attached service."""
