"""Exception hierarchy shared by all ropelab modules."""


class RopelabError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeCharacteristic(RopelabError):
    """Requested characteristic is neither 0 nor a prime."""


class DivisionByZero(RopelabError, ZeroDivisionError):
    """Inversion or division by the zero scalar."""


class FieldMismatch(RopelabError):
    """Operands live over different base fields."""


class DegreeMismatch(RopelabError):
    """Homogeneous operands of incompatible degrees."""


class AllZero(RopelabError):
    """Every input polynomial was zero."""


class ShapeError(RopelabError):
    """Matrix has the wrong number of rows or columns."""


class BoundTooSmall(RopelabError):
    """Kernel degree bound failed its exactness certificate."""


class CodimTooSmall(RopelabError):
    """Ideal of maximal minors does not have codimension two."""


class RankDeficient(RopelabError):
    """Matrix does not have the required generic rank."""


class GenerationFailed(RopelabError):
    """Random search exhausted its retry budget."""


class DegenerateRope(RopelabError):
    """Operation requires a non-degenerate rope."""


class SizeLimit(RopelabError):
    """Requested computation exceeds the desk-scale bound."""


class PreconditionViolated(RopelabError):
    """Formula applied outside its stated hypotheses."""


class CharMismatch(RopelabError):
    """Parameter shape does not match the field characteristic."""


class RangeError(RopelabError):
    """Block-matrix parameters outside the constructible range."""


class InternalError(RopelabError):
    """An internal consistency assertion failed."""
