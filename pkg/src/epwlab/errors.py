"""Exception types raised across the package."""


class EPWLabError(Exception):
    """Base class for all package errors."""


class NotDivisible(EPWLabError, ArithmeticError):
    pass


class ZeroPolynomial(EPWLabError, ValueError):
    pass


class FitFailed(EPWLabError, ValueError):
    pass


class GradeOverflow(EPWLabError, ValueError):
    pass


class ZeroVector(EPWLabError, ValueError):
    pass


class NotSymmetric(EPWLabError, ValueError):
    pass


class SearchExhausted(EPWLabError, RuntimeError):
    pass


class BadDimension(EPWLabError, ValueError):
    pass


class ZeroDeterminant(EPWLabError, ValueError):
    """The determinant vanishes identically (the Lagrangian contains some F_v for every v)."""


class NotInF(EPWLabError, ValueError):
    pass


class WrongCorank(EPWLabError, ValueError):
    pass


class BadSupports(EPWLabError, ValueError):
    pass


class NotOnS(EPWLabError, ValueError):
    pass


class NotTransverse(EPWLabError, ValueError):
    pass


class DegenerateK(EPWLabError, ValueError):
    pass


class AsymmetryDetected(EPWLabError, ValueError):
    pass


class Degenerate(EPWLabError, ValueError):
    pass


class ContainsV0(EPWLabError, ValueError):
    pass


class NotInvertible(EPWLabError, ValueError):
    pass


class BadCertificate(EPWLabError, ValueError):
    pass


class NotAPlane(EPWLabError, ValueError):
    pass


class NotAConic(EPWLabError, ValueError):
    pass


class LineInWK(EPWLabError, ValueError):
    pass
