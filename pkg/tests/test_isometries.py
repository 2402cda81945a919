"""Generators, form preservation and the quadruple normal form."""

import math

import numpy as np
import pytest

from crgeom import boundary as bd
from crgeom import isometries as iso
from crgeom import sampling as sa
from crgeom.errors import CCircle123, CCircle234, SameOrbit, ZeroScale

ORIGIN = bd.BoundaryPoint.finite(0, 0)


def pt(z, t):
    return bd.BoundaryPoint.finite(z, t)


def test_translation_by_zero_is_identity():
    assert np.allclose(iso.heis_translation(0, 0).m, np.eye(3))


def test_translation_moves_origin():
    q = iso.apply(iso.heis_translation(1, 0), ORIGIN)
    assert abs(q.z - 1) < 1e-15 and abs(q.t) < 1e-15


def test_translation_is_left_group_law(rng):
    for _ in range(50):
        w, s = sa.random_complex(rng), rng.uniform(-2, 2)
        z, t = sa.random_complex(rng), rng.uniform(-2, 2)
        q = iso.apply(iso.heis_translation(w, s), pt(z, t))
        expect_z = w + z
        expect_t = s + t + 2.0 * (w * z.conjugate()).imag
        assert abs(q.z - expect_z) < 1e-12 and abs(q.t - expect_t) < 1e-11


def test_translation_form_residual():
    assert iso.verify_form(iso.heis_translation(2 + 1j, 3.0)) < 1e-12


def test_dilation_identity():
    assert np.allclose(iso.dilation_rotation(1).m, np.eye(3))


def test_dilation_action():
    q = iso.apply(iso.dilation_rotation(2j), pt(1, 1))
    assert abs(q.z - 2j) < 1e-14 and abs(q.t - 4) < 1e-14


def test_dilation_preserves_stabiliser_orbit(rng):
    # (1, tan a) must land on (lam, |lam|^2 tan a)
    for _ in range(20):
        a = rng.uniform(-1.3, 1.3)
        lam = sa.random_complex(rng, 0.3, 2.5)
        q = iso.apply(iso.dilation_rotation(lam), pt(1, math.tan(a)))
        assert abs(q.z - lam) < 1e-12
        assert abs(q.t - abs(lam) ** 2 * math.tan(a)) < 1e-11


def test_dilation_zero_scale():
    with pytest.raises(ZeroScale):
        iso.dilation_rotation(0)


def test_inversion_swaps_origin_and_infinity():
    assert iso.apply(iso.inversion(), bd.INFINITY) == ORIGIN
    assert iso.apply(iso.inversion(), ORIGIN).at_infinity


def test_inversion_formula(rng):
    # (z, t) -> (z/u, t') with 1/u the new first lift coordinate, u = -|z|^2 + it
    for _ in range(20):
        z, t = sa.random_complex(rng), rng.uniform(-2, 2)
        u = -abs(z) ** 2 + 1j * t
        q = iso.apply(iso.inversion(), pt(z, t))
        assert abs(q.z - z / u) < 1e-12
        assert abs(q.t - (1 / u).imag) < 1e-12


def test_inversion_is_involution():
    assert np.max(np.abs((iso.inversion() @ iso.inversion()).m - np.eye(3))) < 1e-15


def test_apply_is_action(rng):
    for _ in range(30):
        g, h = sa.random_group_element(rng), sa.random_group_element(rng)
        p = pt(sa.random_complex(rng), rng.uniform(-2, 2))
        lhs = iso.apply(g @ h, p)
        rhs = iso.apply(g, iso.apply(h, p))
        if lhs.at_infinity or rhs.at_infinity:
            assert lhs.at_infinity == rhs.at_infinity
        else:
            assert abs(lhs.z - rhs.z) + abs(lhs.t - rhs.t) < 1e-9


def test_verify_form_values(rng):
    assert iso.verify_form(iso.identity()) == 0
    assert iso.verify_form(iso.inversion()) == 0
    for _ in range(10):
        g = sa.random_group_element(rng, factors=10)
        assert iso.verify_form(g) < 1e-10


class TestNormalize:
    def test_already_normal(self):
        q = (pt(1, 0), bd.INFINITY, ORIGIN, pt(2, 1))
        n, g = iso.normalize_quadruple(q)
        assert abs(n.a) < 1e-15
        assert abs(n.z - 2) < 1e-15 and abs(n.t - 1) < 1e-15
        assert np.max(np.abs(g.m - np.eye(3))) < 1e-15

    def test_images_match_normal_form(self, rng):
        for _ in range(100):
            q = sa.random_quadruple(rng)
            n, g = iso.normalize_quadruple(q)
            refs = n.points()
            for p, ref in zip(q, refs):
                img = iso.apply(g, p)
                if ref.at_infinity:
                    assert img.at_infinity
                else:
                    assert abs(img.z - ref.z) + abs(img.t - ref.t) < 1e-9

    def test_idempotent(self, rng):
        for _ in range(30):
            n, _ = iso.normalize_quadruple(sa.random_quadruple(rng))
            n2, g2 = iso.normalize_quadruple(n.points())
            assert abs(n.a - n2.a) + abs(n.z - n2.z) + abs(n.t - n2.t) < 1e-9
            assert np.max(np.abs(g2.m - np.eye(3))) < 1e-9

    def test_well_defined_on_orbits(self, rng):
        for _ in range(100):
            q = sa.random_quadruple(rng)
            n1, _ = iso.normalize_quadruple(q)
            g = sa.random_group_element(rng)
            n2, _ = iso.normalize_quadruple([iso.apply(g, p) for p in q])
            assert abs(n1.a - n2.a) < 1e-8
            assert abs(n1.z - n2.z) < 1e-8
            assert abs(n1.t - n2.t) < 1e-8

    def test_angle_is_cartan_invariant(self, rng):
        for _ in range(100):
            q = sa.random_quadruple(rng)
            n, _ = iso.normalize_quadruple(q)
            assert abs(n.a - bd.cartan(*q[:3])) < 1e-9

    def test_first_triple_on_c_circle(self):
        with pytest.raises(CCircle123):
            iso.normalize_quadruple((pt(0, 1), bd.INFINITY, ORIGIN, pt(0, 2)))

    def test_last_triple_on_c_circle(self):
        with pytest.raises(CCircle234):
            iso.normalize_quadruple((pt(1, 0), bd.INFINITY, ORIGIN, pt(0, 5)))

    def test_same_orbit(self):
        with pytest.raises(SameOrbit):
            iso.normalize_quadruple((pt(1, 0), bd.INFINITY, ORIGIN, pt(2, 0)))
