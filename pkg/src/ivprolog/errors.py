"""Exception hierarchy shared by every engine."""


class IVPError(Exception):
    """Base class for all errors raised by :mod:`ivprolog`."""


class InvalidInterval(IVPError, ValueError):
    pass


class NegativeExponent(IVPError, ValueError):
    pass


class LexError(IVPError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ParseError(IVPError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(f"{line}:{column}: {message}")


class SpaceTooLarge(IVPError):
    pass


class IterationCap(IVPError):
    pass


class UnboundVariable(IVPError, KeyError):
    pass


class EmptyModelSet(IVPError, ValueError):
    pass


class UnifyFailure(IVPError):
    """Raised when two terms do not (weakly) unify; ordinary control flow."""


class OccursViolation(UnifyFailure):
    pass


class LambdaCutPruned(IVPError):
    """A derivation step produced a degree that does not dominate the lambda-cut."""

    def __init__(self, degree, lambda_cut):
        super().__init__(f"degree {degree} is not >= lambda-cut {lambda_cut}")
        self.degree = degree
        self.lambda_cut = lambda_cut


class CompileError(IVPError):
    pass


class MachineFault(IVPError):
    pass


class DepthLimitExceeded(IVPError):
    """A branch was cut by the depth limit, so the answer stream may be incomplete."""
