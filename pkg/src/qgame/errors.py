"""Exception types raised across the package."""


class QGameError(Exception):
    """Base class for all package errors."""


class NonUnitary(QGameError, ValueError):
    pass


class InvalidDensityMatrix(QGameError, ValueError):
    pass


class NotNormalized(InvalidDensityMatrix):
    pass


class BadProbability(QGameError, ValueError):
    pass


class BadParameter(QGameError, ValueError):
    pass


class MixedHasNoMatrix(QGameError, TypeError):
    """A classical mixed strategy is a distribution over operators, not one operator."""


class UnknownLabel(QGameError, KeyError):
    pass


class BadResolution(QGameError, ValueError):
    pass


class Degenerate(QGameError, ArithmeticError):
    """An indifference condition holds identically, so there is a flat direction."""

    def __init__(self, message, player=None):
        super().__init__(message)
        self.player = player


class SearchBudgetExceeded(QGameError, RuntimeError):
    pass


class ConfigError(QGameError, ValueError):
    pass


class UnknownFixture(QGameError, KeyError):
    pass
