"""Exception types."""


class QNLError(Exception):
    """Base class for library errors."""


class SingularMatrix(QNLError):
    pass


class NotSkew(QNLError):
    pass


class OddDimension(QNLError):
    pass


class ZeroTensor(QNLError):
    pass


class ZeroForm(QNLError):
    pass


class NotDecomposable(QNLError):
    pass


class RankPrecondition(QNLError):
    """Barth condition (i) does not hold for the net."""


class BadSplitting(QNLError):
    pass


class DegenerateRestriction(QNLError):
    """The a-map drops rank somewhere on the line."""


class SingularInput(QNLError):
    pass


class SamePoint(QNLError):
    pass


class BadShape(QNLError):
    pass


class SingularD(QNLError):
    pass


class ParseError(QNLError):
    pass


class SingularBlock(SingularMatrix):
    """A corner block (A1 or B) that must be invertible is not."""


class NotInS(QNLError):
    """A map that should be symmetric in H has a nonzero Lambda-part."""

    def __init__(self, message, lambda_part=None):
        super().__init__(message)
        self.lambda_part = lambda_part
