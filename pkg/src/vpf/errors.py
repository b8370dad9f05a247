"""Exception hierarchy shared by all modules."""


class VPFError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(VPFError, ValueError):
    pass


class SingularMatrix(VPFError, ValueError):
    pass


class NotFullRank(VPFError, ValueError):
    pass


class ZeroCoordinate(VPFError, ValueError):
    pass


class ZeroElongation(VPFError, ValueError):
    pass


class ZeroSumVector(VPFError, ValueError):
    pass


class EqualVectors(VPFError, ValueError):
    pass


class DegenerateDifference(VPFError, ValueError):
    pass


class NonExpandableDenominator(VPFError, ValueError):
    pass


class PoleHit(VPFError, ZeroDivisionError):
    pass


class VectorOutsideExtendedSet(VPFError, ValueError):
    pass


class EmptyInterior(VPFError, ValueError):
    pass


class InvalidRank(VPFError, ValueError):
    pass


class IndependentInput(VPFError, ValueError):
    pass


class BadIndicator(VPFError, ValueError):
    pass


class ParseError(VPFError, ValueError):
    pass
