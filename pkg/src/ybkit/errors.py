"""Exception types raised by the workbench."""


class YBError(Exception):
    """Base class for every error raised by ybkit."""


class ShapeMismatch(YBError, ValueError):
    pass


class Singular(YBError, ArithmeticError):
    pass


class NotAssociative(YBError, ValueError):
    pass


class NoUnit(YBError, ValueError):
    pass


class NotCoassociative(YBError, ValueError):
    pass


class NoCounit(YBError, ValueError):
    pass


class ZeroParameter(YBError, ValueError):
    pass


class MissingAux(YBError, ValueError):
    pass


class AuxFactorizationInvalid(YBError, ValueError):
    pass


class XNotInvertible(YBError, ValueError):
    pass


class WxzFailed(YBError, ValueError):
    pass


class UnsupportedSize(YBError, ValueError):
    pass


class SizeTooLarge(YBError, ValueError):
    pass


class SizeMismatch(YBError, ValueError):
    pass


class NotUjla(YBError, ValueError):
    pass


class DimTooLarge(YBError, ValueError):
    pass


class BimoduleAxiomFailed(YBError, ValueError):
    pass


class NotDerivation(YBError, ValueError):
    pass


class NormalizationFailed(YBError, ValueError):
    pass


class Degenerate(YBError, ValueError):
    pass


class NotConvex(YBError, ValueError):
    pass


class CertificationFailed(YBError, AssertionError):
    """A construction that should provably satisfy an identity did not."""
