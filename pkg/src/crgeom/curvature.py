"""Levi-Civita connection and curvature of the chart models, two ways.

Exact path
    The orthonormal frames of all three models have structure coefficients
    that are rational constants (affrot, heisenberg) or rational multiples of
    1/r (cone).  For an orthonormal frame the Koszul formula collapses to

        g(nabla_{e_i} e_j, e_k) = (c_ijk - c_jki + c_kij) / 2,

    with c_ijk = g([e_i, e_j], e_k), which we evaluate symbolically.  The
    curvature is assembled in the convention

        R(U, V) W = nabla_V nabla_U W - nabla_U nabla_V W + nabla_[U,V] W,

    keeping the frame-derivative terms of the coefficient functions (they
    vanish except along d/dr on the cone, where dropping them is a classical
    trap: radial planes of a metric cone are flat).  Sectional curvature is
    K(U, V) = g(R(U, V) U, V); Ricci is the normalised average
    (1/(n-1)) sum of sectionals and the scalar is (1/n) sum of Riccis.

Finite-difference oracle
    Coordinate Christoffel symbols from central differences of the coordinate
    metric, coordinate curvature from those, contracted against the frame.
    Entirely independent of the structure-constant path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy as sp

from .errors import NonConstantStructure
from .frames import get_model, lie_bracket, partial_jacobian

RADIUS = sp.Symbol("r", positive=True)

_ZERO = sp.S(0)


def _structure_symbols(model: str):
    """Declared structure functions c[i][j][k] with g([e_i,e_j], e_k) = c[i][j][k]."""
    if model == "affrot":
        n, entries = 3, {(0, 1): {1: sp.S(2), 2: sp.S(-2)}}
    elif model == "heisenberg":
        n, entries = 3, {(0, 1): {2: sp.S(-2)}}
    elif model == "cone":
        n = 4
        inv_r = 1 / RADIUS
        entries = {
            (0, 1): {1: 2 * inv_r, 2: -2 * inv_r},
            (0, 3): {0: inv_r},
            (1, 3): {1: inv_r},
            (2, 3): {2: inv_r},
        }
    else:
        raise NonConstantStructure(f"no structure table for model {model!r}")

    c = [[[_ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j), row in entries.items():
        for k, val in row.items():
            c[i][j][k] = val
            c[j][i][k] = -val
    return c


def _frame_derivative(model: str, i: int, expr):
    """e_i applied to a coefficient function; only d/dr acts nontrivially."""
    if model == "cone" and i == 3:
        return sp.diff(expr, RADIUS)
    return _ZERO


def _num(expr, radius: float) -> float:
    return float(expr.subs(RADIUS, radius)) if expr.has(RADIUS) else float(expr)


@dataclass(frozen=True)
class FrameTables:
    """Connection and curvature of a model in its orthonormal frame.

    gamma[i][j][k] is g(nabla_{e_i} e_j, e_k); riemann[i][j][k][m] is the
    e_m-component of R(e_i, e_j) e_k.  Entries are exact sympy expressions
    (constants, or rational functions of the cone radius).
    """

    model: str
    names: tuple
    gamma: tuple
    riemann: tuple
    sectional: dict
    ricci: tuple
    scalar: object

    @property
    def dim(self) -> int:
        return len(self.names)

    def gamma_at(self, i: int, j: int, k: int, radius: float = 1.0) -> float:
        return _num(self.gamma[i][j][k], radius)

    def riemann_at(self, i: int, j: int, k: int, m: int, radius: float = 1.0) -> float:
        return _num(self.riemann[i][j][k][m], radius)

    def connection_vector(self, i: int, j: int, radius: float = 1.0) -> np.ndarray:
        return np.array([self.gamma_at(i, j, k, radius) for k in range(self.dim)])

    def curvature_vector(self, i: int, j: int, k: int, radius: float = 1.0) -> np.ndarray:
        return np.array([self.riemann_at(i, j, k, m, radius) for m in range(self.dim)])

    def sectional_at(self, i: int, j: int, radius: float = 1.0) -> float:
        key = (i, j) if (i, j) in self.sectional else (j, i)
        return _num(self.sectional[key], radius)

    def ricci_at(self, i: int, radius: float = 1.0) -> float:
        return _num(self.ricci[i], radius)

    def scalar_at(self, radius: float = 1.0) -> float:
        return _num(self.scalar, radius)


def _validation_points(model: str, count: int = 20) -> list:
    rng = np.random.default_rng(0xC0FFEE)
    pts = []
    for _ in range(count):
        radius = rng.uniform(0.5, 2.0)
        angle = rng.uniform(-np.pi, np.pi)
        p = [radius * np.cos(angle), radius * np.sin(angle), rng.uniform(-2.0, 2.0)]
        if model == "cone":
            p.append(rng.uniform(0.5, 2.0))
        pts.append(np.array(p))
    return pts


def validate_structure(model: str, tol: float = 1e-8) -> float:
    """Compare declared structure functions with measured ones at sample points.

    Brackets are measured by finite differences and paired against the frame
    through the metric; raises NonConstantStructure when any measured value
    strays from the declared coefficient by more than tol.
    """
    m = get_model(model)
    c = _structure_symbols(model)
    worst = 0.0
    for p in _validation_points(model):
        g = m.metric(p)
        radius = p[3] if model == "cone" else 1.0
        for i in range(m.dim):
            for j in range(i + 1, m.dim):
                bracket = lie_bracket(m.frame[i], m.frame[j])(p)
                for k in range(m.dim):
                    measured = float(m.frame[k](p) @ g @ bracket)
                    declared = _num(c[i][j][k], radius)
                    worst = max(worst, abs(measured - declared))
    if worst > tol:
        raise NonConstantStructure(
            f"declared structure for {model!r} off by {worst:.3e} (tol {tol:.1e})"
        )
    return worst


@lru_cache(maxsize=None)
def connection_table(model: str) -> FrameTables:
    """Exact connection (and curvature) of the model's orthonormal frame."""
    validate_structure(model)
    m = get_model(model)
    n = m.dim
    c = _structure_symbols(model)

    gamma = [[[sp.simplify((c[i][j][k] - c[j][k][i] + c[k][i][j]) / 2) for k in range(n)]
              for j in range(n)] for i in range(n)]

    def nabla(i, comps):
        """nabla_{e_i} of a vector with coefficient functions comps[k]."""
        out = [_ZERO] * n
        for k in range(n):
            out[k] = out[k] + _frame_derivative(model, i, comps[k])
            for l in range(n):
                out[l] = out[l] + comps[k] * gamma[i][k][l]
        return out

    basis = [[sp.S(1) if k == j else _ZERO for k in range(n)] for j in range(n)]
    riemann = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                first = nabla(j, nabla(i, basis[k]))
                second = nabla(i, nabla(j, basis[k]))
                comps = [first[mm] - second[mm] for mm in range(n)]
                for l in range(n):
                    if c[i][j][l] != 0:
                        term = [c[i][j][l] * gamma[l][k][mm] for mm in range(n)]
                        comps = [comps[mm] + term[mm] for mm in range(n)]
                riemann[i][j][k] = [sp.simplify(expr) for expr in comps]

    sectional = {}
    for i in range(n):
        for j in range(i + 1, n):
            sectional[(i, j)] = sp.simplify(riemann[i][j][i][j])
    ricci = tuple(
        sp.simplify(sum(sectional[(min(i, j), max(i, j))] for j in range(n) if j != i) / (n - 1))
        for i in range(n)
    )
    scalar = sp.simplify(sum(ricci) / n)

    names = tuple(f.name for f in m.frame)
    return FrameTables(
        model=model,
        names=names,
        gamma=tuple(tuple(tuple(row) for row in plane) for plane in gamma),
        riemann=tuple(tuple(tuple(tuple(entry) for entry in row) for row in plane) for plane in riemann),
        sectional=sectional,
        ricci=ricci,
        scalar=scalar,
    )


def curvature_table(model: str) -> FrameTables:
    """Alias of :func:`connection_table`; both tables live on one object."""
    return connection_table(model)


def first_bianchi_residual(model: str) -> float:
    """Exact check of R(U,V)W + R(V,W)U + R(W,U)V = 0 over all frame triples."""
    t = connection_table(model)
    n = t.dim
    worst = _ZERO
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    expr = sp.simplify(
                        t.riemann[i][j][k][m] + t.riemann[j][k][i][m] + t.riemann[k][i][j][m]
                    )
                    if expr != 0:
                        worst = expr
    return 0.0 if worst == _ZERO else float("nan")


def torsion_residual(model: str) -> float:
    """Exact check of nabla_U V - nabla_V U = [U, V] on the frame."""
    t = connection_table(model)
    c = _structure_symbols(model)
    for i in range(t.dim):
        for j in range(t.dim):
            for k in range(t.dim):
                if sp.simplify(t.gamma[i][j][k] - t.gamma[j][i][k] - c[i][j][k]) != 0:
                    return float("nan")
    return 0.0


def metric_compatibility_residual(model: str) -> float:
    """Exact antisymmetry g(nabla_U V, W) = -g(nabla_U W, V) on the frame."""
    t = connection_table(model)
    for i in range(t.dim):
        for j in range(t.dim):
            for k in range(t.dim):
                if sp.simplify(t.gamma[i][j][k] + t.gamma[i][k][j]) != 0:
                    return float("nan")
    return 0.0


# ---------------------------------------------------------------------------
# finite-difference oracle
# ---------------------------------------------------------------------------

_D4_OFFSETS = (2, 1, -1, -2)
_D4_WEIGHTS = (-1.0, 8.0, -8.0, 1.0)  # divided by 12 h


def _metric_derivatives(metric, p, h1: float, h2: float):
    """First and second derivatives of the coordinate metric at p.

    Fourth-order central stencils; the absolute agreement gates (1e-5 against
    the exact tables on quantities reaching |K| = 32 at r = 1/2) need the
    extra order over plain three-point differences.
    """
    p = np.asarray(p, dtype=float)
    n = p.size
    scale = max(1.0, float(np.linalg.norm(p)))
    ha, hb = h1 * scale, h2 * scale

    def g_at(q):
        return np.asarray(metric(q), dtype=float)

    def shifted(i, s, h, base=None):
        q = (p if base is None else base).copy()
        q[i] += s * h
        return q

    g0 = g_at(p)
    dg = np.zeros((n, n, n))
    for i in range(n):
        acc = np.zeros_like(g0)
        for s, w in zip(_D4_OFFSETS, _D4_WEIGHTS):
            acc += w * g_at(shifted(i, s, ha))
        dg[i] = acc / (12.0 * ha)

    d2g = np.zeros((n, n, n, n))
    for i in range(n):
        acc = -30.0 * g0
        for s, w in zip(_D4_OFFSETS, (-1.0, 16.0, 16.0, -1.0)):
            acc = acc + w * g_at(shifted(i, s, hb))
        d2g[i, i] = acc / (12.0 * hb**2)
        for j in range(i + 1, n):
            acc = np.zeros_like(g0)
            for si, wi in zip(_D4_OFFSETS, _D4_WEIGHTS):
                for sj, wj in zip(_D4_OFFSETS, _D4_WEIGHTS):
                    acc += wi * wj * g_at(shifted(j, sj, hb, shifted(i, si, hb)))
            mixed = acc / (144.0 * hb**2)
            d2g[i, j] = mixed
            d2g[j, i] = mixed
    return g0, dg, d2g


def _lowered_christoffels(dg: np.ndarray) -> np.ndarray:
    # lower[l, i, j] = (d_i g_lj + d_j g_li - d_l g_ij) / 2, with dg[i] = d_i g
    return 0.5 * (np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg)


def fd_christoffels(model: str, p, h1: float = 1e-4) -> np.ndarray:
    """Coordinate Christoffel symbols Gamma^k_{ij} by central differences."""
    m = get_model(model)
    p = m.check_point(p)
    g0, dg, _ = _metric_derivatives(m.metric, p, h1, 5e-4)
    return np.einsum("kl,lij->kij", np.linalg.inv(g0), _lowered_christoffels(dg))


def fd_riemann_frame(model: str, p, h1: float = 1e-4, h2: float = 5e-4) -> np.ndarray:
    """Frame components of the curvature at p, by finite differences.

    Returns an array R with R[i][j][k][m] = g(R(e_i, e_j) e_k, e_m) in the
    convention R(U,V)W = nabla_V nabla_U W - nabla_U nabla_V W + nabla_[U,V] W.
    """
    m = get_model(model)
    p = m.check_point(p)
    g0, dg, d2g = _metric_derivatives(m.metric, p, h1, h2)
    ginv = np.linalg.inv(g0)

    lower = _lowered_christoffels(dg)
    gamma = np.einsum("kl,lij->kij", ginv, lower)

    # d_m Gamma^k_{ij} assembled from FD metric derivatives, with
    # dlower[m, l, i, j] = (d2_{mi} g_lj + d2_{mj} g_li - d2_{ml} g_ij) / 2
    dginv = -np.einsum("ka,mab,bl->mkl", ginv, dg, ginv)
    dlower = 0.5 * (
        np.einsum("milj->mlij", d2g)
        + np.einsum("mjli->mlij", d2g)
        - np.einsum("mlij->mlij", d2g)
    )
    dgamma = np.einsum("mkl,lij->mkij", dginv, lower) + np.einsum("kl,mlij->mkij", ginv, dlower)

    # standard-convention coordinate curvature: R_std(e_i, e_j) e_k = R[l,k,i,j] e_l
    riem_std = np.einsum("iljk->lkij", dgamma) - np.einsum("jlik->lkij", dgamma)
    riem_std += np.einsum("lim,mjk->lkij", gamma, gamma) - np.einsum("ljm,mik->lkij", gamma, gamma)

    frame = np.stack([e(p) for e in m.frame], axis=1)  # columns e_a
    # this package's convention (module docstring) is the negative of the standard one
    contracted = -np.einsum("lkij,ia,jb,kc->labc", riem_std, frame, frame, frame)
    out = np.einsum("labc,lm,md->abcd", contracted, g0, frame)
    # out[a][b][c][d] = g(R_pap(e_a, e_b) e_c, e_d)
    return out


def fd_sectional(model: str, p, h1: float = 1e-4, h2: float = 5e-4):
    """Sectional curvatures of the distinguished frame planes at p (FD path)."""
    m = get_model(model)
    table = fd_riemann_frame(model, p, h1, h2)
    out = {}
    for i in range(m.dim):
        for j in range(i + 1, m.dim):
            out[(i, j)] = float(table[i][j][i][j])
    return out


def fd_ricci_scalar(model: str, p, h1: float = 1e-4, h2: float = 5e-4):
    """Normalised Ricci values and scalar curvature from the FD sectionals."""
    m = get_model(model)
    sec = fd_sectional(model, p, h1, h2)
    n = m.dim
    ricci = [
        sum(sec[(min(i, j), max(i, j))] for j in range(n) if j != i) / (n - 1)
        for i in range(n)
    ]
    return ricci, sum(ricci) / n


# ---------------------------------------------------------------------------
# Killing and Sasaki residuals (exact and FD routes)
# ---------------------------------------------------------------------------

def _reeb_index(model: str) -> int:
    idx = get_model(model).reeb_index
    if idx is None:
        raise NonConstantStructure(f"model {model!r} has no Reeb field")
    return idx


def killing_residual(model: str, u_coeffs, v_coeffs, radius: float = 1.0) -> float:
    """|g(nabla_V T, U) + g(V, nabla_U T)| for constant frame coefficients."""
    t = connection_table(model)
    ridx = _reeb_index(model)
    u = np.asarray(u_coeffs, dtype=float)
    v = np.asarray(v_coeffs, dtype=float)
    total = 0.0
    for j in range(t.dim):
        for k in range(t.dim):
            total += (v[j] * u[k] + u[j] * v[k]) * t.gamma_at(j, ridx, k, radius)
    return abs(total)


def sasaki_residual(model: str, u_coeffs, v_coeffs, radius: float = 1.0) -> float:
    """Norm of R(U, T)V - (g(U,V) T - g(T,V) U) for constant frame coefficients."""
    t = connection_table(model)
    ridx = _reeb_index(model)
    u = np.asarray(u_coeffs, dtype=float)
    v = np.asarray(v_coeffs, dtype=float)
    n = t.dim
    lhs = np.zeros(n)
    for i in range(n):
        for k in range(n):
            if u[i] == 0.0 or v[k] == 0.0:
                continue
            lhs += u[i] * v[k] * t.curvature_vector(i, ridx, k, radius)
    rhs = np.zeros(n)
    rhs[ridx] = float(u @ v)
    rhs -= v[ridx] * u
    return float(np.linalg.norm(lhs - rhs))


def _coordinate_combination(model: str, coeffs, p) -> np.ndarray:
    m = get_model(model)
    frame = np.stack([e(p) for e in m.frame], axis=1)
    return frame @ np.asarray(coeffs, dtype=float)


def killing_residual_fd(model: str, u_coeffs, v_coeffs, p, h1: float = 1e-4) -> float:
    """FD version of the Killing residual, via coordinate covariant derivatives."""
    m = get_model(model)
    p = m.check_point(p)
    gamma = fd_christoffels(model, p, h1)
    g = np.asarray(m.metric(p), dtype=float)
    reeb = m.frame[_reeb_index(model)]
    treeb = reeb(p)
    dreeb = partial_jacobian(reeb.coeffs, p)

    def nabla_dir(u_vec):
        return dreeb @ u_vec + np.einsum("kab,a,b->k", gamma, u_vec, treeb)

    u = _coordinate_combination(model, u_coeffs, p)
    v = _coordinate_combination(model, v_coeffs, p)
    return abs(float(nabla_dir(v) @ g @ u + v @ g @ nabla_dir(u)))


def sasaki_residual_fd(model: str, u_coeffs, v_coeffs, p,
                       h1: float = 1e-4, h2: float = 5e-4) -> float:
    """FD version of the Sasaki identity residual at p."""
    m = get_model(model)
    p = m.check_point(p)
    table = fd_riemann_frame(model, p, h1, h2)
    ridx = _reeb_index(model)
    u = np.asarray(u_coeffs, dtype=float)
    v = np.asarray(v_coeffs, dtype=float)
    n = m.dim
    lhs = np.einsum("i,k,ikm->m", u, v, table[:, ridx, :, :])
    rhs = np.zeros(n)
    rhs[ridx] = float(u @ v)
    rhs -= v[ridx] * u
    return float(np.linalg.norm(lhs - rhs))
