# -*- coding: utf-8 -*-

"""
Exception hierarchy. Every error raised on purpose by this package is a
:class:`GreenlemError`, and also a builtin ``ValueError`` / ``RuntimeError``
so callers that only know the builtins still catch it.
"""


class GreenlemError(Exception):
    pass


class DegenerateMapError(GreenlemError, ValueError):
    """
    The map or lift is not a non-degenerate degree >= 2 endomorphism:
    zero denominator, common root, degree too small, zero scale factor.
    """


class RootFindingError(GreenlemError, RuntimeError):
    def __init__(self, message: str, best_residual: float = float("nan")):
        super().__init__(message)
        self.best_residual = best_residual


class ExceptionalPointError(GreenlemError, ValueError):
    pass


class SampleCapError(GreenlemError, ValueError):
    pass


class InfiniteAtomError(GreenlemError, ValueError):
    pass


class NotPolynomialError(GreenlemError, ValueError):
    pass


class MapFormatError(GreenlemError, ValueError):
    pass


class ConfigError(GreenlemError, ValueError):
    pass
