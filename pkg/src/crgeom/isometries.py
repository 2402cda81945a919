"""Projective action of the holomorphic isometry group on boundary points.

Group elements are 3x3 complex matrices preserving the Hermitian form up to
rounding (we work in U(2,1) modulo scalars; determinant normalisation is
skipped because every computed quantity is projective).  The module provides
the elementary generators

    heis_translation(w, s)   left Heisenberg translation, fixes infinity
    dilation_rotation(lam)   (z, t) -> (lam z, |lam|^2 t), fixes 0 and infinity
    inversion()              the form matrix itself, swaps 0 and infinity

and the normalisation of quadruples to the form
(1, tan a), infinity, (0, 0), (z, t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import (
    BoundaryPoint,
    HERMITIAN_MATRIX,
    INFINITY,
    SQRT2,
    cartan,
    lift,
    project,
    quadruple,
)
from .errors import CCircle123, CCircle234, FormViolation, SameOrbit, ZeroScale

#: Margin below which side conditions of the normal form count as violated.
SIDE_MARGIN = 1e-12


@dataclass(frozen=True)
class GroupElement:
    """An isometry, as a form-preserving matrix acting projectively on lifts."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        object.__setattr__(self, "m", m)
        res = verify_form_matrix(m)
        if res > 1e-9:
            raise FormViolation(f"form residual {res:.3e} exceeds 1e-9")

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.m @ other.m)

    def inverse(self) -> "GroupElement":
        # H m* H inverts any form-preserving matrix: m^{-1} = H m^* H.
        return GroupElement(HERMITIAN_MATRIX @ self.m.conj().T @ HERMITIAN_MATRIX)


def verify_form_matrix(m: np.ndarray) -> float:
    """Max-entry magnitude of m* H m - H."""
    res = m.conj().T @ HERMITIAN_MATRIX @ m - HERMITIAN_MATRIX
    return float(np.max(np.abs(res)))


def verify_form(g: GroupElement) -> float:
    return verify_form_matrix(g.m)


def identity() -> GroupElement:
    return GroupElement(np.eye(3, dtype=complex))


def heis_translation(w: complex, s: float) -> GroupElement:
    """Left Heisenberg translation by (w, s); upper triangular, fixes infinity."""
    w = complex(w)
    m = np.array(
        [
            [1.0, -SQRT2 * w.conjugate(), -abs(w) ** 2 + 1j * s],
            [0.0, 1.0, SQRT2 * w],
            [0.0, 0.0, 1.0],
        ],
        dtype=complex,
    )
    return GroupElement(m)


def dilation_rotation(lam: complex) -> GroupElement:
    """Acts as (z, t) -> (lam z, |lam|^2 t); diagonal, fixes 0 and infinity."""
    lam = complex(lam)
    if lam == 0:
        raise ZeroScale("dilation-rotation scale must be nonzero")
    a = abs(lam)
    return GroupElement(np.diag([a, lam / a, 1.0 / a]).astype(complex))


def inversion() -> GroupElement:
    """The involution swapping 0 and infinity (the form matrix itself)."""
    return GroupElement(HERMITIAN_MATRIX.copy())


def apply(g: GroupElement, p: BoundaryPoint) -> BoundaryPoint:
    """Projective action: project(g.m @ lift(p))."""
    return project(g.m @ lift(p))


@dataclass(frozen=True)
class NormalizedQuadruple:
    """Normal form (1, tan a), infinity, (0,0), (z, t) of a quadruple.

    Side conditions: a strictly inside (-pi/2, pi/2), z != 0, and
    t/|z|^2 != tan a, each with margin SIDE_MARGIN.
    """

    a: float
    z: complex
    t: float

    def __post_init__(self):
        if not abs(self.a) < math.pi / 2 - SIDE_MARGIN:
            raise CCircle123(f"angle {self.a} not strictly inside (-pi/2, pi/2)")
        if abs(self.z) < SIDE_MARGIN:
            raise CCircle234("z vanishes in the normal form")
        if abs(self.t / abs(self.z) ** 2 - math.tan(self.a)) < SIDE_MARGIN:
            raise SameOrbit("t/|z|^2 equals tan a: p4 in the stabiliser orbit of p1")

    def points(self):
        """The four boundary points of the normal form."""
        return quadruple(
            BoundaryPoint.finite(1.0, math.tan(self.a)),
            INFINITY,
            BoundaryPoint.finite(0.0, 0.0),
            BoundaryPoint.finite(self.z, self.t),
        )


def normalize_quadruple(q) -> tuple[NormalizedQuadruple, GroupElement]:
    """Move (p1, p2, p3, p4) to the normal form, returning it with the mover.

    Pipeline: send p2 to infinity (translate to 0 then invert, skipped when p2
    is already infinity), translate the image of p3 to the origin, then apply
    the dilation-rotation with scale 1/z1.  Each step fixes the previously
    placed points.
    """
    p1, p2, p3, p4 = quadruple(*q)

    g = identity()
    if not p2.at_infinity:
        g = inversion() @ heis_translation(-p2.z, -p2.t)

    q3 = apply(g, p3)
    g = heis_translation(-q3.z, -q3.t) @ g

    q1 = apply(g, p1)
    if abs(q1.z) < SIDE_MARGIN:
        raise CCircle123("p1, p2, p3 lie on a common C-circle")
    g = dilation_rotation(1.0 / q1.z) @ g

    n1 = apply(g, p1)
    n4 = apply(g, p4)
    a = math.atan2(n1.t, abs(n1.z) ** 2)
    if abs(n4.z) < SIDE_MARGIN:
        raise CCircle234("p2, p3, p4 lie on a common C-circle")
    if abs(n4.t / abs(n4.z) ** 2 - math.tan(a)) < SIDE_MARGIN:
        raise SameOrbit("p4 lies in the Stab(p2, p3)-orbit of p1")
    return NormalizedQuadruple(a, n4.z, n4.t), g


def cartan_of_first_triple(q) -> float:
    """Cartan invariant of (p1, p2, p3); equals the normal-form angle."""
    return cartan(q[0], q[1], q[2])
