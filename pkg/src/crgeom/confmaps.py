"""Maps between the quadruple configuration space and its three models.

A normalised quadruple (a, z, t) is carried to

* the punctured cone over the affine-rotational group, (z, t, e^{tan a}),
  minus the slice { log r = t/|z|^2 };
* the complex pair (z, (|z|^2 - i t)/(1 - i tan a)) in C* x (C \\ R);
* the variety point (x1, x2, a) where x1, x2 are cross-ratios and a the
  Cartan invariant of the first triple.  The variety is cut out of
  C^2 x (-pi/2, pi/2) by

      F(w1, w2, a) = |w1 + w2 - 1|^2 - 2 Re(w1 conj(w2) (1 + e^{-2ia})) = 0

  with side conditions w1 + w2 - 1 != 0, Re(w1 conj(w2) e^{-ia}) > 0 and
  arg(w1/w2) != 2a.

The cone and the variety are CR-diffeomorphic; the equivalence and its
pushforward identities are checked numerically through complexified
finite-difference Jacobians.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .boundary import cartan_from_lifts, cross_ratio_from_lifts, lift
from .errors import DenominatorVanishes, InvalidPoint
from .groups import angle_distance, siegel_defect
from .isometries import NormalizedQuadruple, SIDE_MARGIN, normalize_quadruple

ON_VARIETY_TOL = 1e-9


@dataclass(frozen=True)
class ConePointPrime:
    """Cone point (z, t, r), z != 0, r > 0, off the slice log r = t/|z|^2."""

    z: complex
    t: float
    r: float

    def __post_init__(self):
        if abs(self.z) < 1e-300:
            raise InvalidPoint("cone point needs z != 0")
        if not (self.r > 0.0 and math.isfinite(self.r)):
            raise InvalidPoint("cone point needs finite r > 0")
        if abs(math.log(self.r) - self.t / abs(self.z) ** 2) <= SIDE_MARGIN:
            raise InvalidPoint("cone point lies on the excluded slice log r = t/|z|^2")

    def chart(self) -> np.ndarray:
        """Coordinates (x, y, t, r)."""
        return np.array([self.z.real, self.z.imag, self.t, self.r])


@dataclass(frozen=True)
class VarietyPoint:
    """Point (w1, w2, a) of the cross-ratio variety with its side conditions."""

    w1: complex
    w2: complex
    a: float

    def __post_init__(self):
        if not abs(self.a) < math.pi / 2:
            raise InvalidPoint("angle must lie in (-pi/2, pi/2)")
        res = variety_equation_residual(self.w1, self.w2, self.a)
        if res > ON_VARIETY_TOL:
            raise InvalidPoint(f"point off the variety: residual {res:.3e}")
        if abs(self.w1 + self.w2 - 1.0) <= SIDE_MARGIN:
            raise InvalidPoint("side condition w1 + w2 - 1 != 0 violated")
        if (self.w1 * self.w2.conjugate() * cmath.exp(-1j * self.a)).real <= SIDE_MARGIN:
            raise InvalidPoint("side condition Re(w1 conj(w2) e^{-ia}) > 0 violated")
        if angle_distance(cmath.phase(self.w1 / self.w2), 2.0 * self.a) <= SIDE_MARGIN:
            raise InvalidPoint("side condition arg(w1/w2) != 2a violated")


def variety_equation_residual(x1: complex, x2: complex, a: float) -> float:
    """| |x1+x2-1|^2 - 2 Re(x1 conj(x2) (1 + e^{-2ia})) |."""
    lhs = abs(x1 + x2 - 1.0) ** 2
    rhs = 2.0 * (x1 * x2.conjugate() * (1.0 + cmath.exp(-2j * a))).real
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# the four bijections
# ---------------------------------------------------------------------------

def to_cone(n: NormalizedQuadruple) -> ConePointPrime:
    """(a, z, t) -> (z, t, e^{tan a})."""
    return ConePointPrime(n.z, n.t, math.exp(math.tan(n.a)))


def cone_to_normalized(c: ConePointPrime) -> NormalizedQuadruple:
    """(z, t, r) -> (arctan(log r), z, t)."""
    return NormalizedQuadruple(math.atan(math.log(c.r)), c.z, c.t)


def to_complex_pair(n: NormalizedQuadruple) -> tuple[complex, complex]:
    """(a, z, t) -> (z, (|z|^2 - i t)/(1 - i tan a)) in C* x (C \\ R)."""
    w = (abs(n.z) ** 2 - 1j * n.t) / (1.0 - 1j * math.tan(n.a))
    return n.z, w


def complex_pair_to_normalized(zeta: complex, w: complex) -> NormalizedQuadruple:
    if abs(w.imag) <= SIDE_MARGIN:
        raise InvalidPoint("second component must have nonzero imaginary part")
    tan_a = (abs(zeta) ** 2 - w.real) / w.imag
    t = (w.real * abs(zeta) ** 2 - abs(w) ** 2) / w.imag
    return NormalizedQuadruple(math.atan(tan_a), zeta, t)


def normalized_cross_ratios(n: NormalizedQuadruple) -> tuple[complex, complex]:
    """Closed forms of (x1, x2) on the normal form, with u = -|z|^2 + i t:

        x1 = (-1 - i tan a) / (u - 1 - i tan a + 2 z),  x2 = u / (same).
    """
    u = -abs(n.z) ** 2 + 1j * n.t
    den = u - 1.0 - 1j * math.tan(n.a) + 2.0 * n.z
    if abs(den) < SIDE_MARGIN:
        raise DenominatorVanishes("cross-ratio closed form denominator vanishes")
    return (-1.0 - 1j * math.tan(n.a)) / den, u / den


def variety_from_quadruple(q) -> VarietyPoint:
    """(x1, x2, Cartan of the first triple) for a quadruple in the admissible set.

    Membership is validated by running the normalisation (which raises the
    C-circle and orbit errors); the components themselves are computed from
    lifts of the original points, so they are invariant data.
    """
    normalize_quadruple(q)
    lifts = [lift(p) for p in q]
    x1 = cross_ratio_from_lifts(lifts[0], lifts[1], lifts[2], lifts[3])
    x2 = cross_ratio_from_lifts(lifts[0], lifts[2], lifts[1], lifts[3])
    return VarietyPoint(x1, x2, cartan_from_lifts(lifts[0], lifts[1], lifts[2]))


def variety_to_normalized(v: VarietyPoint) -> NormalizedQuadruple:
    """Reconstruct the normal form: z = (w1+w2-1)/((1+e^{-2ia}) w1), etc."""
    den = (1.0 + cmath.exp(-2j * v.a)) * v.w1
    if abs(den) < SIDE_MARGIN:
        raise DenominatorVanishes("variety inverse denominator vanishes")
    z = (v.w1 + v.w2 - 1.0) / den
    t = -2.0 * (v.w2 / den).imag
    return NormalizedQuadruple(v.a, z, t)


def cone_to_variety(c: ConePointPrime) -> VarietyPoint:
    """G(z, t, r) = (q/(u+2z+q), u/(u+2z+q), arctan(-Im q)), q = -1 - i log r."""
    u = -abs(c.z) ** 2 + 1j * c.t
    q = -1.0 - 1j * math.log(c.r)
    den = u + 2.0 * c.z + q
    if abs(den) < SIDE_MARGIN:
        raise DenominatorVanishes("CR equivalence denominator vanishes on the cone")
    return VarietyPoint(q / den, u / den, math.atan(-q.imag))


def variety_to_cone(v: VarietyPoint) -> ConePointPrime:
    n = variety_to_normalized(v)
    return ConePointPrime(n.z, n.t, math.exp(math.tan(v.a)))


def cone_to_complex_pair(c: ConePointPrime) -> tuple[complex, complex]:
    """F(z, t, r) = (z, (|z|^2 - i t)/(1 - i log r))."""
    return c.z, (abs(c.z) ** 2 - 1j * c.t) / (1.0 - 1j * math.log(c.r))


def complex_pair_to_cone(zeta: complex, w: complex) -> ConePointPrime:
    if abs(w.imag) <= SIDE_MARGIN:
        raise InvalidPoint("second component must have nonzero imaginary part")
    t = (w.real * abs(zeta) ** 2 - abs(w) ** 2) / w.imag
    r = math.exp((abs(zeta) ** 2 - w.real) / w.imag)
    return ConePointPrime(zeta, t, r)


# ---------------------------------------------------------------------------
# CR structure of the variety
# ---------------------------------------------------------------------------

def cr_generator(v: VarietyPoint) -> tuple[complex, complex]:
    """Coefficients (alpha, beta) of the (1,0) generator alpha dw1 + beta dw2.

    alpha = conj(w2) - e^{2ia} conj(w1) - 1 and
    beta = 1 + e^{-2ia} conj(w2) - conj(w1); they annihilate dF exactly and
    cannot both vanish away from a = +-pi/2.
    """
    alpha = v.w2.conjugate() - cmath.exp(2j * v.a) * v.w1.conjugate() - 1.0
    beta = 1.0 + cmath.exp(-2j * v.a) * v.w2.conjugate() - v.w1.conjugate()
    if abs(alpha) + abs(beta) < SIDE_MARGIN:
        raise InvalidPoint("CR generator vanishes; angle degenerates to +-pi/2")
    return alpha, beta


def variety_contact_form(v: VarietyPoint, tangent) -> float:
    """tau = -beta2 du1 - beta1 dv1 + alpha2 du2 + alpha1 dv2 on a real tangent.

    The tangent is given by its components on (u1, v1, u2, v2); a fifth
    component along the angle coordinate is accepted and ignored since tau
    has no da term.
    """
    h = np.asarray(tangent, dtype=float)
    if h.size not in (4, 5):
        raise InvalidPoint("tangent must have 4 or 5 real components")
    alpha, beta = cr_generator(v)
    return float(-beta.imag * h[0] - beta.real * h[1] + alpha.imag * h[2] + alpha.real * h[3])


def defining_function(w1: complex, w2: complex, a: float) -> float:
    return abs(w1 + w2 - 1.0) ** 2 - 2.0 * (w1 * w2.conjugate() * (1.0 + cmath.exp(-2j * a))).real


# ---------------------------------------------------------------------------
# Levi forms, closed and finite-difference routes
# ---------------------------------------------------------------------------

def _complex_hessian(f, reals: np.ndarray, pairs: int, step: float = 1e-4) -> np.ndarray:
    """Hessian d^2 f / dw_i d(conj w_j) of a real function of complex pairs.

    ``reals`` holds (u1, v1, ..., u_pairs, v_pairs, extras...); derivatives
    are taken only in the pair coordinates, by central second differences.
    """
    m = 2 * pairs
    scale = max(1.0, float(np.linalg.norm(reals)))
    h = step * scale
    f0 = f(reals)

    def d2(i, j):
        ei = np.zeros_like(reals)
        ej = np.zeros_like(reals)
        ei[i] = h
        ej[j] = h
        if i == j:
            return (f(reals + ei) - 2.0 * f0 + f(reals - ei)) / h**2
        return (f(reals + ei + ej) - f(reals + ei - ej) - f(reals - ei + ej) + f(reals - ei - ej)) / (4.0 * h**2)

    second = np.zeros((m, m))
    for i in range(m):
        for j in range(i, m):
            second[i, j] = second[j, i] = d2(i, j)

    hess = np.zeros((pairs, pairs), dtype=complex)
    for i in range(pairs):
        for j in range(pairs):
            uu = second[2 * i, 2 * j]
            vv = second[2 * i + 1, 2 * j + 1]
            uv = second[2 * i, 2 * j + 1]
            vu = second[2 * i + 1, 2 * j]
            hess[i, j] = 0.25 * (uu + vv + 1j * (uv - vu))
    return hess


def levi_siegel_closed(z1: complex, z2: complex) -> float:
    """Levi value of the Siegel defect on its zero set; equals 1 + defect."""
    return 1.0 + siegel_defect(z1, z2)


def levi_siegel_fd(z1: complex, z2: complex, step: float = 1e-4) -> float:
    def f(reals):
        return siegel_defect(reals[0] + 1j * reals[1], reals[2] + 1j * reals[3])

    reals = np.array([z1.real, z1.imag, z2.real, z2.imag])
    hess = _complex_hessian(f, reals, pairs=2, step=step)
    gen = np.array([-abs(z2) ** 2, z2], dtype=complex)
    return float((gen.conj() @ hess.T @ gen).real)


def levi_variety_closed(v: VarietyPoint) -> float:
    """|alpha|^2 - 2 Re(alpha conj(beta) e^{-2ia}) + |beta|^2 (= 4 cos^2 a)."""
    alpha, beta = cr_generator(v)
    return (
        abs(alpha) ** 2
        - 2.0 * (alpha * beta.conjugate() * cmath.exp(-2j * v.a)).real
        + abs(beta) ** 2
    )


def levi_variety_fd(v: VarietyPoint, step: float = 1e-4) -> float:
    def f(reals):
        return defining_function(reals[0] + 1j * reals[1], reals[2] + 1j * reals[3], v.a)

    reals = np.array([v.w1.real, v.w1.imag, v.w2.real, v.w2.imag])
    hess = _complex_hessian(f, reals, pairs=2, step=step)
    gen = np.array(cr_generator(v), dtype=complex)
    return float((gen.conj() @ hess.T @ gen).real)


def levi_value(kind: str, point, method: str = "closed") -> float:
    """Levi form value; kind is 'siegel' (expects (z1, z2)) or 'variety'."""
    if kind == "siegel":
        z1, z2 = point
        return levi_siegel_closed(z1, z2) if method == "closed" else levi_siegel_fd(z1, z2)
    if kind == "variety":
        return levi_variety_closed(point) if method == "closed" else levi_variety_fd(point)
    raise InvalidPoint(f"unknown Levi kind {kind!r}")


# ---------------------------------------------------------------------------
# complexified pushforwards
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexTangent:
    """(1,0)/(0,1) decomposition of a pushed-forward complex tangent vector."""

    holo: tuple
    anti: tuple
    extra: tuple = ()

    def norm(self) -> float:
        return float(
            math.sqrt(
                sum(abs(c) ** 2 for c in self.holo)
                + sum(abs(c) ** 2 for c in self.anti)
                + sum(abs(c) ** 2 for c in self.extra)
            )
        )

    def anti_norm(self) -> float:
        return float(math.sqrt(sum(abs(c) ** 2 for c in self.anti)))


def _fd_jacobian(real_map, p: np.ndarray, step: float) -> np.ndarray:
    base = np.asarray(real_map(p), dtype=float)
    h = step * max(1.0, float(np.linalg.norm(p)))
    jac = np.zeros((base.size, p.size))
    for i in range(p.size):
        dp = np.zeros_like(p)
        dp[i] = h
        jac[:, i] = (np.asarray(real_map(p + dp)) - np.asarray(real_map(p - dp))) / (2.0 * h)
    return jac


def pushforward(real_map, p, coeffs, out_pairs: int, step: float = 1e-6) -> ComplexTangent:
    """Push a complex tangent vector through a real map and split by type.

    ``coeffs`` are complex coefficients on the real coordinate directions at
    p; the image components are grouped into ``out_pairs`` complex pairs
    (u_k, v_k) -> w_k, on which a vector a du + b dv decomposes as
    (a + i b) dw + (a - i b) d(conj w); remaining image coordinates are
    reported unchanged.
    """
    p = np.asarray(p, dtype=float)
    jac = _fd_jacobian(real_map, p, step)
    out = jac @ np.asarray(coeffs, dtype=complex)
    holo, anti = [], []
    for k in range(out_pairs):
        a, b = out[2 * k], out[2 * k + 1]
        holo.append(a + 1j * b)
        anti.append(a - 1j * b)
    return ComplexTangent(tuple(holo), tuple(anti), tuple(out[2 * out_pairs:]))


def cone_cr_generator_coords(p4: np.ndarray) -> np.ndarray:
    """Coordinates of the cone (1,0) generator z dz + i |z|^2 dt at (x, y, t, r)."""
    z = p4[0] + 1j * p4[1]
    return np.array([z / 2.0, -1j * z / 2.0, 1j * abs(z) ** 2, 0.0], dtype=complex)


def cone_transverse_coords(p4: np.ndarray) -> np.ndarray:
    """Coordinates of (T + i S)/2 with S = r d/dr at (x, y, t, r)."""
    return np.array([-p4[1] / 2.0, p4[0] / 2.0, 0.0, 1j * p4[3] / 2.0], dtype=complex)


def _equivalence_real(p4: np.ndarray) -> np.ndarray:
    c = ConePointPrime(p4[0] + 1j * p4[1], p4[2], p4[3])
    v = cone_to_variety(c)
    return np.array([v.w1.real, v.w1.imag, v.w2.real, v.w2.imag, v.a])


def _pair_map_real(p4: np.ndarray) -> np.ndarray:
    c = ConePointPrime(p4[0] + 1j * p4[1], p4[2], p4[3])
    zeta, w = cone_to_complex_pair(c)
    return np.array([zeta.real, zeta.imag, w.real, w.imag])


def equivalence_scale_factor(v: VarietyPoint) -> complex:
    """The factor k with G_*(generator) = k (alpha dw1 + beta dw2)."""
    return -v.w1 * (v.w1 + v.w2 - 1.0) / ((1.0 + cmath.exp(2j * v.a)) * v.w1.conjugate())


def cr_equivalence_residual(v: VarietyPoint, step: float = 1e-6) -> float:
    """Norm of G_*(cone generator) - k (alpha, beta) at the matching cone point."""
    c = variety_to_cone(v)
    p4 = c.chart()
    push = pushforward(_equivalence_real, p4, cone_cr_generator_coords(p4), out_pairs=2, step=step)
    alpha, beta = cr_generator(v)
    k = equivalence_scale_factor(v)
    if abs(k) < SIDE_MARGIN:
        raise DenominatorVanishes("CR scale factor vanishes")
    diff = [push.holo[0] - k * alpha, push.holo[1] - k * beta]
    return ComplexTangent(tuple(diff), push.anti, push.extra).norm()


def pair_map_pushforward(c: ConePointPrime, which: str = "generator", step: float = 1e-6) -> ComplexTangent:
    """Pushforward through F of the cone generator or of the transverse field."""
    p4 = c.chart()
    coeffs = cone_cr_generator_coords(p4) if which == "generator" else cone_transverse_coords(p4)
    return pushforward(_pair_map_real, p4, coeffs, out_pairs=2, step=step)


def pair_map_generator_expected(c: ConePointPrime) -> tuple[complex, complex]:
    """Closed form of F_*(generator): (zeta, 2|z|^2/(1 - i log r)) on (dzeta, dw)."""
    return c.z, 2.0 * abs(c.z) ** 2 / (1.0 - 1j * math.log(c.r))
