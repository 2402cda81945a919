"""Connection and curvature tables against their closed forms and the FD oracle."""

import numpy as np
import pytest

from crgeom import curvature as cv
from crgeom import sampling as sa

AFFROT_CONNECTION = {
    (0, 0): [0, 0, 0],
    (1, 0): [0, -2, 1],
    (2, 0): [0, 1, 0],
    (0, 1): [0, 0, -1],
    (1, 1): [2, 0, 0],
    (2, 1): [-1, 0, 0],
    (0, 2): [0, 1, 0],
    (1, 2): [-1, 0, 0],
    (2, 2): [0, 0, 0],
}

# R(e_i, e_j) e_k in frame components; forced by the connection table together
# with the first Bianchi identity and the pair symmetry of the tensor
AFFROT_CURVATURE = {
    (0, 1, 0): [0, -7, 0],
    (0, 2, 0): [0, 0, 1],
    (1, 2, 0): [0, 0, 0],
    (0, 1, 1): [7, 0, 0],
    (0, 2, 1): [0, 0, 0],
    (1, 2, 1): [0, 0, 1],
    (0, 1, 2): [0, 0, 0],
    (0, 2, 2): [-1, 0, 0],
    (1, 2, 2): [0, -1, 0],
}


def cone_connection(r):
    inv = 1.0 / r
    return {
        (0, 0): [0, 0, 0, -inv],
        (1, 0): [0, -2 * inv, inv, 0],
        (2, 0): [0, inv, 0, 0],
        (3, 0): [0, 0, 0, 0],
        (0, 1): [0, 0, -inv, 0],
        (1, 1): [2 * inv, 0, 0, -inv],
        (2, 1): [-inv, 0, 0, 0],
        (3, 1): [0, 0, 0, 0],
        (0, 2): [0, inv, 0, 0],
        (1, 2): [-inv, 0, 0, 0],
        (2, 2): [0, 0, 0, -inv],
        (3, 2): [0, 0, 0, 0],
        (0, 3): [inv, 0, 0, 0],
        (1, 3): [0, inv, 0, 0],
        (2, 3): [0, 0, inv, 0],
        (3, 3): [0, 0, 0, 0],
    }


@pytest.mark.parametrize("model", ["affrot", "heisenberg", "cone"])
def test_structure_declarations_match_measured_brackets(model):
    assert cv.validate_structure(model) < 1e-8


@pytest.mark.parametrize("model", ["affrot", "heisenberg", "cone"])
def test_connection_is_levi_civita(model):
    assert cv.torsion_residual(model) == 0.0
    assert cv.metric_compatibility_residual(model) == 0.0


@pytest.mark.parametrize("model", ["affrot", "heisenberg", "cone"])
def test_first_bianchi(model):
    assert cv.first_bianchi_residual(model) == 0.0


def test_affrot_connection_table():
    t = cv.connection_table("affrot")
    for (i, j), expect in AFFROT_CONNECTION.items():
        assert np.allclose(t.connection_vector(i, j), expect, atol=1e-15)


def test_cone_connection_table():
    t = cv.connection_table("cone")
    for r in (0.5, 1.0, 2.0):
        for (i, j), expect in cone_connection(r).items():
            assert np.allclose(t.connection_vector(i, j, r), expect, atol=1e-14)


def test_affrot_curvature_table():
    t = cv.connection_table("affrot")
    for (i, j, k), expect in AFFROT_CURVATURE.items():
        assert np.allclose(t.curvature_vector(i, j, k), expect, atol=1e-15)


def test_affrot_sectional_ricci_scalar():
    t = cv.connection_table("affrot")
    assert t.sectional_at(0, 1) == -7.0
    assert t.sectional_at(0, 2) == 1.0
    assert t.sectional_at(1, 2) == 1.0
    assert [t.ricci_at(i) for i in range(3)] == [-3.0, -3.0, 1.0]
    assert abs(t.scalar_at() + 5.0 / 3.0) < 1e-15


def test_heisenberg_sectional():
    t = cv.connection_table("heisenberg")
    assert t.sectional_at(0, 1) == -3.0
    assert t.sectional_at(0, 2) == 1.0
    assert t.sectional_at(1, 2) == 1.0
    assert abs(t.scalar_at() + 1.0 / 3.0) < 1e-15


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_cone_sectional_ricci_scalar(r):
    t = cv.connection_table("cone")
    assert abs(t.sectional_at(0, 1, r) + 8.0 / r**2) < 1e-14
    # every plane touching the radial direction is flat, as on any metric cone
    for plane in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        assert abs(t.sectional_at(*plane, r)) < 1e-15
    assert abs(t.ricci_at(0, r) + 8.0 / (3.0 * r**2)) < 1e-14
    assert abs(t.ricci_at(2, r)) < 1e-15
    assert abs(t.scalar_at(r) + 4.0 / (3.0 * r**2)) < 1e-14


@pytest.mark.parametrize("model", ["affrot", "heisenberg", "cone"])
def test_fd_oracle_matches_exact_tensor(model, rng):
    t = cv.connection_table(model)
    n = t.dim
    for _ in range(100):
        p = sa.random_chart_point(rng, model)
        radius = p[3] if model == "cone" else 1.0
        fd = cv.fd_riemann_frame(model, p)
        exact = np.array(
            [[[[t.riemann_at(i, j, k, m, radius) for m in range(n)] for k in range(n)]
              for j in range(n)] for i in range(n)]
        )
        assert np.max(np.abs(fd - exact)) < 1e-5


def test_fd_oracle_anchor_values(rng):
    p = sa.random_chart_point(rng, "affrot")
    assert abs(cv.fd_sectional("affrot", p)[(0, 1)] + 7.0) < 1e-4
    q = sa.random_chart_point(rng, "heisenberg")
    assert abs(cv.fd_sectional("heisenberg", q)[(0, 1)] + 3.0) < 1e-4
    c = sa.random_chart_point(rng, "cone")
    c[3] = 2.0
    _, scalar = cv.fd_ricci_scalar("cone", c)
    assert abs(scalar + 1.0 / 3.0) < 1e-4


class TestKillingAndSasaki:
    def test_frame_pairs_vanish(self):
        assert cv.killing_residual("affrot", [1, 0, 0], [0, 1, 0]) == 0.0
        assert cv.killing_residual("affrot", [1, 0, 0], [1, 0, 0]) == 0.0
        assert cv.sasaki_residual("affrot", [1, 0, 0], [0, 1, 0]) < 1e-15
        assert cv.sasaki_residual("affrot", [0, 0, 1], [0, 0, 1]) < 1e-15

    @pytest.mark.parametrize("model", ["affrot", "heisenberg"])
    def test_random_combinations_exact(self, model, rng):
        for _ in range(100):
            u = sa.random_frame_coeffs(rng, 3)
            v = sa.random_frame_coeffs(rng, 3)
            assert cv.killing_residual(model, u, v) < 1e-10
            assert cv.sasaki_residual(model, u, v) < 1e-10

    @pytest.mark.parametrize("model", ["affrot", "heisenberg"])
    def test_random_combinations_fd(self, model, rng):
        for _ in range(25):
            u = sa.random_frame_coeffs(rng, 3)
            v = sa.random_frame_coeffs(rng, 3)
            p = sa.random_chart_point(rng, model)
            assert cv.killing_residual_fd(model, u, v, p) < 1e-5
            assert cv.sasaki_residual_fd(model, u, v, p) < 1e-5
