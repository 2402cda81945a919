"""The Heisenberg group, the affine-rotational group and its identifications.

The affine-rotational group lives on C* x R with multiplication

    (z, t) * (w, s) = (z w, t + s |z|^2),

unit (1, 0) and inverse (1/z, -t/|z|^2).  It is isomorphic to
Aff(R) x U(1) via (z, t) -> ([[|z|^2, t], [0, 1]], e^{i arg z}), embeds onto
the zero set of rho(z1, z2) = 2 Re(z1)/|z2|^2 + 1 inside the boundary of the
Siegel domain via (z, t) -> (-|z|^2 + i t, sqrt(2) z), and maps onto the unit
tangent bundle of the hyperbolic plane (left half-plane times a circle) via
(z, t) -> (-|z|^2 + i t, arg z).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .boundary import SQRT2
from .errors import InvalidPoint


def wrap_angle(theta: float) -> float:
    """Representative of an angle in (-pi, pi]."""
    out = math.fmod(theta, 2.0 * math.pi)
    if out > math.pi:
        out -= 2.0 * math.pi
    elif out <= -math.pi:
        out += 2.0 * math.pi
    return out


def angle_distance(a: float, b: float) -> float:
    """Distance between two angles modulo 2 pi."""
    return abs(wrap_angle(a - b))


@dataclass(frozen=True)
class AffRotPoint:
    """Element (z, t) of the affine-rotational group; z must be nonzero."""

    z: complex
    t: float

    def __post_init__(self):
        if abs(self.z) < 1e-300:
            raise InvalidPoint("z = 0 is outside C*")


AFFROT_UNIT = AffRotPoint(1.0 + 0j, 0.0)


def affrot_mul(a: AffRotPoint, b: AffRotPoint) -> AffRotPoint:
    return AffRotPoint(a.z * b.z, a.t + b.t * abs(a.z) ** 2)


def affrot_inv(a: AffRotPoint) -> AffRotPoint:
    return AffRotPoint(1.0 / a.z, -a.t / abs(a.z) ** 2)


def heis_mul(a: tuple[complex, float], b: tuple[complex, float]) -> tuple[complex, float]:
    """Heisenberg group law (z,t)(w,s) = (z+w, t+s+2 Im(z conj(w)))."""
    z, t = a
    w, s = b
    return z + w, t + s + 2.0 * (z * complex(w).conjugate()).imag


@dataclass(frozen=True)
class AffineAngle:
    """Element of Aff(R) x U(1): affine map x -> alpha x + beta and an angle."""

    alpha: float
    beta: float
    theta: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise InvalidPoint("affine part must be orientation preserving (alpha > 0)")


def to_affine_u1(a: AffRotPoint) -> AffineAngle:
    """Group isomorphism (z, t) -> (|z|^2, t, arg z)."""
    return AffineAngle(abs(a.z) ** 2, a.t, cmath.phase(a.z))


def from_affine_u1(e: AffineAngle) -> AffRotPoint:
    return AffRotPoint(math.sqrt(e.alpha) * cmath.exp(1j * e.theta), e.beta)


def affine_u1_mul(e1: AffineAngle, e2: AffineAngle) -> AffineAngle:
    """Product in Aff(R) x U(1): affine matrices compose, angles add mod 2 pi."""
    return AffineAngle(e1.alpha * e2.alpha, e1.alpha * e2.beta + e1.beta, wrap_angle(e1.theta + e2.theta))


def boundary_embedding(a: AffRotPoint) -> tuple[complex, complex]:
    """(z, t) -> (-|z|^2 + i t, sqrt(2) z), landing on the zero set of siegel_defect."""
    return (-abs(a.z) ** 2 + 1j * a.t, SQRT2 * a.z)


def siegel_defect(z1: complex, z2: complex) -> float:
    """Defining function 2 Re(z1)/|z2|^2 + 1 of the punctured Siegel boundary."""
    return 2.0 * complex(z1).real / abs(z2) ** 2 + 1.0


@dataclass(frozen=True)
class TangentBundlePoint:
    """Point (zeta, phi) of the unit tangent bundle over the left half-plane."""

    zeta: complex
    phi: float

    def __post_init__(self):
        if not self.zeta.real < 0:
            raise InvalidPoint("base point must lie in the left half-plane")


def to_tangent_bundle(a: AffRotPoint) -> TangentBundlePoint:
    """Koranyi-type chart (z, t) -> (-|z|^2 + i t, arg z)."""
    return TangentBundlePoint(-abs(a.z) ** 2 + 1j * a.t, cmath.phase(a.z))


def from_tangent_bundle(p: TangentBundlePoint) -> AffRotPoint:
    return AffRotPoint(math.sqrt(-p.zeta.real) * cmath.exp(1j * p.phi), p.zeta.imag)
