"""Exception hierarchy shared by every recipro module."""


class ReciproError(Exception):
    """Base class for all recipro errors."""


class InvalidGraph(ReciproError, ValueError):
    """Edge list violates simplicity (self-loop, duplicate) or node range."""


class NodeOutOfRange(ReciproError, IndexError):
    pass


class EmptyGraph(ReciproError, ValueError):
    """A ratio over the edge count was requested for a graph with no edges."""


class UnbalancedSums(ReciproError, ValueError):
    """Out-degree and in-degree sums differ, so no digraph exists."""


class InvalidDegree(ReciproError, ValueError):
    pass


class DimensionMismatch(ReciproError, ValueError):
    pass


class NegativeResidual(ReciproError, ValueError):
    pass


class NotGraphic(ReciproError, ValueError):
    pass


class InvalidInstance(ReciproError, ValueError):
    pass


class NotBoundAchieving(ReciproError, ValueError):
    pass


class NotRewirable(ReciproError, ValueError):
    pass


class InvalidLength(ReciproError, ValueError):
    pass


class TooLarge(ReciproError, ValueError):
    pass


class BudgetExhausted(ReciproError):
    """Search budget ran out before the optimum was certified.

    ``rho_lower`` and ``witness`` hold the best realization found so far;
    ``rho_lower`` is only a lower bound on the true maximum.
    """

    def __init__(self, message, rho_lower=None, witness=None):
        super().__init__(message)
        self.rho_lower = rho_lower
        self.witness = witness


class MalformedLine(ReciproError, ValueError):
    def __init__(self, lineno, line):
        super().__init__(f"line {lineno}: expected 2 tokens, got {line!r}")
        self.lineno = lineno
        self.line = line
