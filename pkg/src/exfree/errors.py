"""Shared exception types.

Input problems (bad literals, bad parameters) raise ValueError subclasses so
callers can distinguish them from resource exhaustion, which is always
signalled by BudgetExceededError and never silently coerced to a boolean.
"""


class GraphFormatError(ValueError):
    """Malformed graph6 text or an invalid graph construction."""


class PatternSyntaxError(ValueError):
    """Unrecognized pattern or generator literal."""


class InfeasibleError(ValueError):
    """The requested search space is empty (e.g. an edgeless forbidden graph)."""


class BudgetExceededError(RuntimeError):
    """A configured resource budget (edge count, vertex count, search nodes) ran out."""
