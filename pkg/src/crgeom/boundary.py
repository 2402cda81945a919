"""Boundary points of the complex hyperbolic plane and their invariants.

The boundary is the one-point compactification of the Heisenberg group.  A
finite point carries Heisenberg coordinates (z, t); the extra point is
``INFINITY``.  Points are represented projectively by null 3-vectors ("lifts")
of the signature-(2,1) Hermitian form

    <v, w> = v1*conj(w3) + v2*conj(w2) + v3*conj(w1),

i.e. the form given by the antidiagonal matrix H = [[0,0,1],[0,1,0],[1,0,0]].
On top of the lifts this module computes the Cartan angular invariant of
triples and the complex cross-ratios of quadruples, together with the two
real identities every cross-ratio triple satisfies.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateQuadruple,
    DegenerateTriple,
    NonNullVector,
    UndefinedCrossRatio,
)

SQRT2 = math.sqrt(2.0)

#: Hermitian matrix of the form, also the matrix of the 0 <-> infinity inversion.
HERMITIAN_MATRIX = np.array(
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex
)

#: Coordinate tolerance used for point distinctness checks.
DISTINCT_TOL = 1e-12


@dataclass(frozen=True)
class BoundaryPoint:
    """A boundary point: Heisenberg coordinates (z, t), or the point at infinity."""

    z: complex = 0j
    t: float = 0.0
    at_infinity: bool = False

    @staticmethod
    def finite(z: complex, t: float) -> "BoundaryPoint":
        return BoundaryPoint(complex(z), float(t), False)

    def __repr__(self) -> str:
        if self.at_infinity:
            return "BoundaryPoint(inf)"
        return f"BoundaryPoint(z={self.z!r}, t={self.t!r})"


INFINITY = BoundaryPoint(at_infinity=True)


def points_close(p: BoundaryPoint, q: BoundaryPoint, tol: float = DISTINCT_TOL) -> bool:
    """Coordinate closeness; the infinity tag is compared exactly."""
    if p.at_infinity or q.at_infinity:
        return p.at_infinity and q.at_infinity
    return abs(p.z - q.z) <= tol and abs(p.t - q.t) <= tol


def _check_distinct(points, exc) -> None:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points_close(points[i], points[j]):
                raise exc(f"points {i + 1} and {j + 1} coincide")


def triple(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint):
    """Ordered triple of pairwise distinct boundary points."""
    pts = (p1, p2, p3)
    _check_distinct(pts, DegenerateTriple)
    return pts


def quadruple(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint, p4: BoundaryPoint):
    """Ordered quadruple of pairwise distinct boundary points."""
    pts = (p1, p2, p3, p4)
    _check_distinct(pts, DegenerateQuadruple)
    return pts


def lift(p: BoundaryPoint) -> np.ndarray:
    """Standard lift: (z,t) -> [-|z|^2 + i t, sqrt(2) z, 1]; infinity -> [1,0,0]."""
    if p.at_infinity:
        return np.array([1.0, 0.0, 0.0], dtype=complex)
    return np.array([-abs(p.z) ** 2 + 1j * p.t, SQRT2 * p.z, 1.0], dtype=complex)


def herm(v: np.ndarray, w: np.ndarray) -> complex:
    """Hermitian product <v, w> = v1*conj(w3) + v2*conj(w2) + v3*conj(w1)."""
    return v[0] * w[2].conjugate() + v[1] * w[1].conjugate() + v[2] * w[0].conjugate()


def project(v: np.ndarray) -> BoundaryPoint:
    """Inverse of :func:`lift` on arbitrary null vectors, by projectivisation.

    Raises NonNullVector when |<v,v>| / ||v||^2 exceeds 1e-9.
    """
    v = np.asarray(v, dtype=complex)
    norm2 = float(np.vdot(v, v).real)
    if norm2 == 0.0:
        raise NonNullVector("zero vector has no projectivisation")
    if abs(herm(v, v)) / norm2 > 1e-9:
        raise NonNullVector(f"form value {herm(v, v):.3e} too large relative to ||v||^2")
    scale = max(abs(c) for c in v)
    if abs(v[2]) <= 1e-12 * scale:
        return INFINITY
    w = v / v[2]
    z = w[1] / SQRT2
    # Re(w0) = -|z|^2 holds for null vectors; only the imaginary part is data.
    return BoundaryPoint.finite(z, w[0].imag)


def cartan_from_lifts(l1: np.ndarray, l2: np.ndarray, l3: np.ndarray) -> float:
    """arg of minus the cyclic triple Hermitian product, in [-pi/2, pi/2]."""
    prod = herm(l1, l2) * herm(l2, l3) * herm(l3, l1)
    if prod == 0:
        raise DegenerateTriple("triple Hermitian product vanishes")
    return cmath.phase(-prod)


def cartan(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint) -> float:
    """Cartan angular invariant of an ordered triple of distinct points."""
    triple(p1, p2, p3)
    return cartan_from_lifts(lift(p1), lift(p2), lift(p3))


def cross_ratio_from_lifts(l1, l2, l3, l4) -> complex:
    """Cross-ratio <p4,p2><p3,p1> / (<p4,p1><p3,p2>) from explicit lifts."""
    num = herm(l4, l2) * herm(l3, l1)
    den = herm(l4, l1) * herm(l3, l2)
    if abs(den) < 1e-14 * max(abs(num), 1.0):
        raise UndefinedCrossRatio("cross-ratio denominator vanishes")
    return num / den


def cross_ratio(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint, p4: BoundaryPoint) -> complex:
    """Complex cross-ratio of an ordered quadruple of distinct boundary points."""
    quadruple(p1, p2, p3, p4)
    return cross_ratio_from_lifts(lift(p1), lift(p2), lift(p3), lift(p4))


@dataclass(frozen=True)
class CrossRatioTriple:
    """The three cross-ratios (x1, x2, x3) attached to an ordered quadruple.

    The modulus identity |x2| = |x1| |x3| is enforced at construction; the
    second (quadratic) identity holds for triples coming from actual
    quadruples but is not imposed, so off-variety triples can be probed.
    """

    x1: complex
    x2: complex
    x3: complex

    def __post_init__(self):
        r1, _ = xratio_identity_residuals(self.x1, self.x2, self.x3)
        scale = max(1.0, abs(self.x2))
        if r1 > 1e-8 * scale:
            raise UndefinedCrossRatio(
                f"modulus identity violated: | |x2| - |x1||x3| | = {r1:.3e}"
            )

    def identity_residuals(self) -> tuple[float, float]:
        return xratio_identity_residuals(self.x1, self.x2, self.x3)


def xratio_identity_residuals(x1: complex, x2: complex, x3: complex) -> tuple[float, float]:
    """Absolute residuals of the two real cross-ratio identities.

    First:  | |x2| - |x1|*|x3| |.
    Second: | |x1+x2-1|^2 - 2 Re( x1*(conj(x2) + conj(x1)*x3) ) |.
    """
    r1 = abs(abs(x2) - abs(x1) * abs(x3))
    r2 = abs(abs(x1 + x2 - 1.0) ** 2 - 2.0 * (x1 * (x2.conjugate() + x1.conjugate() * x3)).real)
    return r1, r2


def cross_ratio_triple(p1, p2, p3, p4) -> CrossRatioTriple:
    """The triple (x1, x2, x3) = (X(1,2,3,4), X(1,3,2,4), X(2,3,1,4))."""
    q = quadruple(p1, p2, p3, p4)
    lifts = [lift(p) for p in q]
    x1 = cross_ratio_from_lifts(lifts[0], lifts[1], lifts[2], lifts[3])
    x2 = cross_ratio_from_lifts(lifts[0], lifts[2], lifts[1], lifts[3])
    x3 = cross_ratio_from_lifts(lifts[1], lifts[2], lifts[0], lifts[3])
    return CrossRatioTriple(x1, x2, x3)
