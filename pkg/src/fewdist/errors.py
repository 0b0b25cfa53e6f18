"""Exception hierarchy shared by all fewdist modules."""


class FewDistError(Exception):
    """Base class for every error raised by this package."""


class MixedRadicands(FewDistError, ValueError):
    pass


class NotSquare(FewDistError, ValueError):
    pass


class NotSymmetric(FewDistError, ValueError):
    pass


class DuplicatePoints(FewDistError, ValueError):
    pass


class NotRealizable(FewDistError, ValueError):
    pass


class NotDistanceSet(FewDistError, ValueError):
    pass


class SpectrumMismatch(FewDistError, ValueError):
    pass


class WrongS(FewDistError, ValueError):
    pass


class InvalidN(FewDistError, ValueError):
    pass


class InconsistentK(FewDistError, ValueError):
    pass


class NoConvergence(FewDistError, ArithmeticError):
    pass


class DimensionMismatch(FewDistError, ValueError):
    pass


class IndexOutOfRange(FewDistError, IndexError):
    pass


class RangeError(FewDistError, ValueError):
    pass


class SizeMismatch(FewDistError, ValueError):
    pass


class UnsupportedN(FewDistError, ValueError):
    pass


class InvalidQ(FewDistError, ValueError):
    pass


class ParseError(FewDistError, ValueError):
    pass
