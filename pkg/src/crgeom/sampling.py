"""Seeded random generators for test data and verification sweeps.

All sampling flows through a single numpy Generator so that reports are
reproducible from a seed.  Regions stay well away from the singular locus
z = 0 (moduli in [0.3, 2], cone radii in [0.5, 2]) and side conditions are
enforced with a fixed margin so residual gates are meaningful.
"""

from __future__ import annotations

import math

import numpy as np

from .boundary import BoundaryPoint, quadruple
from .confmaps import ConePointPrime, VarietyPoint, cone_to_variety
from .errors import GeometryError
from .isometries import (
    GroupElement,
    NormalizedQuadruple,
    apply,
    dilation_rotation,
    heis_translation,
    identity,
    inversion,
)

MARGIN = 0.05


def make_rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_complex(rng, low: float = 0.3, high: float = 2.0) -> complex:
    radius = rng.uniform(low, high)
    angle = rng.uniform(-math.pi, math.pi)
    return radius * complex(math.cos(angle), math.sin(angle))


def random_normalized(rng) -> NormalizedQuadruple:
    """Normal form (a, z, t) with comfortable margins on every side condition."""
    while True:
        a = rng.uniform(-1.2, 1.2)
        z = random_complex(rng)
        t = rng.uniform(-2.0, 2.0)
        if abs(t / abs(z) ** 2 - math.tan(a)) < MARGIN:
            continue
        u = -abs(z) ** 2 + 1j * t
        if abs(u - 1.0 - 1j * math.tan(a) + 2.0 * z) < 4 * MARGIN:
            continue  # keeps the cross-ratios bounded
        return NormalizedQuadruple(a, z, t)


def random_group_element(rng, factors: int = 3) -> GroupElement:
    g = identity()
    for i in range(factors):
        kind = rng.integers(0, 3)
        if kind == 0:
            g = heis_translation(random_complex(rng, 0.0, 1.0), rng.uniform(-1.0, 1.0)) @ g
        elif kind == 1:
            lam = math.exp(rng.uniform(-0.4, 0.4)) * np.exp(1j * rng.uniform(-math.pi, math.pi))
            g = dilation_rotation(lam) @ g
        else:
            g = inversion() @ g
    return g


def random_quadruple(rng):
    """A quadruple in the admissible set, as a random isometry of a normal form."""
    n = random_normalized(rng)
    g = random_group_element(rng)
    return quadruple(*(apply(g, p) for p in n.points()))


def random_finite_quadruple(rng):
    """Four generic pairwise-distinct finite points (no membership guarantees)."""
    while True:
        pts = [BoundaryPoint.finite(random_complex(rng), rng.uniform(-2.0, 2.0)) for _ in range(4)]
        try:
            return quadruple(*pts)
        except GeometryError:
            continue


def random_cone_point(rng) -> ConePointPrime:
    while True:
        z = random_complex(rng, 0.5, 2.0)
        t = rng.uniform(-2.0, 2.0)
        r = rng.uniform(0.5, 2.0)
        if abs(math.log(r) - t / abs(z) ** 2) < MARGIN:
            continue
        return ConePointPrime(z, t, r)


def random_variety_point(rng) -> VarietyPoint:
    while True:
        try:
            return cone_to_variety(random_cone_point(rng))
        except GeometryError:
            continue


def random_chart_point(rng, model: str) -> np.ndarray:
    z = random_complex(rng, 0.5, 2.0)
    p = [z.real, z.imag, rng.uniform(-2.0, 2.0)]
    if model == "cone":
        p.append(rng.uniform(0.5, 2.0))
    return np.array(p)


def random_frame_coeffs(rng, dim: int) -> np.ndarray:
    """Unit coefficient vector; residual gates are bilinear in the coefficients."""
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)
