""" exceptions raised on invalid inputs and failed computations """


class EntanglementGeometryError(ValueError):
    """Base class of every error raised by entgeom"""


class NonHermitian(EntanglementGeometryError):
    pass


class NoConvergence(EntanglementGeometryError):
    pass


class SizeUnsupported(EntanglementGeometryError):
    pass


class ShapeMismatch(EntanglementGeometryError):
    pass


class NotNormalized(EntanglementGeometryError):
    pass


class BadDims(EntanglementGeometryError):
    pass


class ParseError(EntanglementGeometryError):
    pass


class DimMismatch(EntanglementGeometryError):
    pass


class NotUnitary(EntanglementGeometryError):
    pass


class InvalidDensity(EntanglementGeometryError):
    pass


class BadSite(EntanglementGeometryError):
    pass


class OutOfRange(EntanglementGeometryError):
    pass


class TooLarge(EntanglementGeometryError):
    pass


class NotFound(EntanglementGeometryError):
    pass


class IdentityViolation(EntanglementGeometryError):
    """A mathematical identity checked at runtime does not hold within tolerance"""
