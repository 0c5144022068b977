"""Exception hierarchy.

Every domain failure raised by the library derives from ``GeometryError`` so
callers (the CLI in particular) can catch one base class and still report the
specific name.
"""


class GeometryError(ValueError):
    """Base class for all domain errors raised by this package."""


class ParseError(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


# matfun
class NotHermitian(GeometryError):
    pass


class SpectrumOutOfDomain(GeometryError):
    pass


class NotUnitary(GeometryError):
    pass


class SpectrumTouchesMinusOne(GeometryError):
    pass


# hopf
class NotInSphere(GeometryError):
    pass


class TopBlockSingular(GeometryError):
    pass


class NotInChart(GeometryError):
    pass


class NotSameFiber(GeometryError):
    pass


class NotTangent(GeometryError):
    pass


class NotCodiagonal(GeometryError):
    pass


# sphere
class NotProjection(GeometryError):
    pass


class MobiusPole(GeometryError):
    pass


class OutsideLogDomain(GeometryError):
    pass


class ProjectionsTooFar(GeometryError):
    pass


class PathTooCoarse(GeometryError):
    pass


class NotRsp(GeometryError):
    pass


# opgraph / spectral
class ParameterOutOfRange(GeometryError):
    pass


class TraceMismatch(GeometryError):
    pass


class NoGeodesicFound(GeometryError):
    pass


class KernelMismatch(GeometryError):
    pass


class IndexNonZero(GeometryError):
    pass
