"""Exception types raised across pointerlab."""


class PointerLabError(Exception):
    """Base class for all pointerlab errors."""


class InvalidArgumentError(PointerLabError, ValueError):
    """An argument is malformed, out of range, or inconsistent with another."""


class PreconditionError(PointerLabError, ValueError):
    """Arguments are individually valid but violate an operation's precondition."""


class DegenerateInputError(PointerLabError, ValueError):
    """The input sits on a degenerate point where the result is undefined."""


class ConfigError(PointerLabError, ValueError):
    """An experiment configuration is incomplete or out of range."""


class ConvergenceError(PointerLabError, RuntimeError):
    """An iterative routine failed to reach its tolerance."""
