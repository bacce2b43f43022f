"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    pass


class UnsupportedSize(ValueError):
    """Raised when an input exceeds a brute-force size guard."""


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class AmbiguousRank(ArithmeticError):
    """A floating residual fell inside the band where the rank cannot be trusted."""


class NumericError(ArithmeticError):
    pass
