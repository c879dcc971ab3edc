"""Exception hierarchy shared by every module of the package."""


class OrientRRError(ValueError):
    """Base class for all domain errors raised by orient_rr."""


# series
class ZeroConstantTerm(OrientRRError):
    pass


class NonzeroConstantTerm(OrientRRError):
    pass


class NotReversible(OrientRRError):
    pass


class BadConstantTerm(OrientRRError):
    pass


class InsufficientOrder(OrientRRError):
    """A computation needs coefficients beyond the known order of a series."""


# orientations
class UnknownOrientation(OrientRRError):
    pass


class InvalidOrientation(OrientRRError):
    pass


# cohomology / K-theory rings
class ShapeMismatch(OrientRRError):
    pass


class NonNilpotentArgument(OrientRRError):
    pass


class VirtualBundle(OrientRRError):
    pass


class DimensionMismatch(OrientRRError):
    pass


# pushforwards
class BadMapKind(OrientRRError):
    pass


class NonIntegerResult(OrientRRError):
    """An Euler characteristic came out non-integral; always an implementation fault."""


class UnknownSuite(OrientRRError):
    pass
