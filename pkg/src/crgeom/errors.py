"""Exception taxonomy for the geometry toolkit.

Every domain error carries a short stable ``name`` so the service layer and
the CLI can surface it in machine-readable reports.
"""

from __future__ import annotations


class GeometryError(Exception):
    """Base class for all domain errors raised by this package."""

    name = "GeometryError"


class NonNullVector(GeometryError):
    """A 3-vector expected to be null for the Hermitian form is not."""

    name = "NonNullVector"


class DegenerateTriple(GeometryError):
    """Two of the three points of a triple coincide."""

    name = "DegenerateTriple"


class DegenerateQuadruple(GeometryError):
    """Two of the four points of a quadruple coincide."""

    name = "DegenerateQuadruple"


class UndefinedCrossRatio(GeometryError):
    """Denominator of a cross-ratio vanishes (degenerate configuration)."""

    name = "UndefinedCrossRatio"


class ZeroScale(GeometryError):
    """A dilation-rotation was requested with scale 0."""

    name = "ZeroScale"


class FormViolation(GeometryError):
    """A matrix does not preserve the Hermitian form within tolerance."""

    name = "FormViolation"


class CCircle123(GeometryError):
    """The first three points of a quadruple lie on a common C-circle."""

    name = "CCircle123"


class CCircle234(GeometryError):
    """The last three points of a quadruple lie on a common C-circle."""

    name = "CCircle234"


class SameOrbit(GeometryError):
    """p1 and p4 lie in the same orbit of the stabiliser of (p2, p3)."""

    name = "SameOrbit"


class DenominatorVanishes(GeometryError):
    """A map denominator vanished on input that should have excluded it."""

    name = "DenominatorVanishes"


class NonConstantStructure(GeometryError):
    """Measured frame structure coefficients disagree with the declared ones."""

    name = "NonConstantStructure"


class InvalidPoint(GeometryError):
    """A point violates the invariants of its chart or domain type."""

    name = "InvalidPoint"


class DocumentError(GeometryError):
    """An input document is malformed or fails its invariants."""

    name = "DocumentError"
