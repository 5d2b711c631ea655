"""Exception types raised across the package."""

from __future__ import annotations


class KashaevError(Exception):
    """Base class for every error raised by this package."""


class NegativeRadicand(KashaevError, ValueError):
    pass


class InexactSquareRoot(KashaevError, ValueError):
    pass


class ModeMismatch(KashaevError, TypeError):
    pass


class ZeroBaseVertex(KashaevError, ZeroDivisionError):
    pass


class ZeroVertexValue(KashaevError, ValueError):
    pass


class ZeroFaceExpression(KashaevError, ValueError):
    pass


class NeighborhoodIncomplete(KashaevError, KeyError):
    pass


class NotCoherent(KashaevError):
    pass


class NonConvergent(KashaevError):
    pass


class VertexMismatch(KashaevError, ValueError):
    pass


class BadN(KashaevError, ValueError):
    pass


class NotFlippable(KashaevError, ValueError):
    pass


class NotAdmissible(KashaevError, ValueError):
    def __init__(self, message, quadruple=None):
        super().__init__(message)
        self.quadruple = quadruple


class InvalidPile(KashaevError, ValueError):
    pass


class InvalidComplex(KashaevError, ValueError):
    pass


class MissingValue(KashaevError, KeyError):
    pass


class NotComfortable(KashaevError):
    pass


class Ungeneric(KashaevError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BadBase(KashaevError, ValueError):
    pass


class NotRealizable(KashaevError, ValueError):
    pass


class DegenerateOffDiagonal(KashaevError, ValueError):
    pass


class UnlabeledVertex(KashaevError, KeyError):
    pass


class MissingMinor(KashaevError, KeyError):
    pass


class ZeroMinor(KashaevError, ValueError):
    pass


class BadParams(KashaevError, ValueError):
    pass


class ZeroG(KashaevError, ZeroDivisionError):
    pass


class ZeroDenominator(KashaevError, ZeroDivisionError):
    pass
