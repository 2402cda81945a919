"""Frames, coframes, metrics and finite-difference exterior calculus.

Three chart models are provided:

``affrot``
    The affine-rotational group in coordinates (x, y, t), z = x + i y != 0,
    with orthonormal frame
        X = x dx + y dy,  Y = x dy - y dx - 2|z|^2 dt,  T = x dy - y dx
    (T is the Reeb field of the contact form omega = (dt + 2x dy - 2y dx)/(2|z|^2)).

``cone``
    Its metric cone in coordinates (x, y, t, r), r > 0, metric dr^2 + r^2 g,
    orthonormal frame X/r, Y/r, T/r, d/dr.

``heisenberg``
    The Heisenberg group in coordinates (x, y, t) with contact form
    eta = (dt + 2x dy - 2y dx)/2, Reeb field 2 d/dt and orthonormal frame
        X = dx + 2y dt,  Y = dy - 2x dt,  T = 2 dt.
    The horizontal fields are the classical ones; the contact form is scaled
    so that (1/2) d eta(X, Y) = g(JX, Y) holds, which is the normalisation
    that makes the structure Sasakian.

Vector fields and 1-forms are coefficient functions on the chart.  Brackets
and exterior derivatives are evaluated by central finite differences of the
coefficient functions (default relative step 1e-5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidPoint
from .groups import wrap_angle

DEFAULT_STEP = 1e-5


def _as_point(p) -> np.ndarray:
    return np.asarray(p, dtype=float)


@dataclass(frozen=True)
class VectorField:
    """A vector field given by its coordinate coefficient function."""

    name: str
    coeffs: Callable[[np.ndarray], np.ndarray]

    def __call__(self, p) -> np.ndarray:
        return np.asarray(self.coeffs(_as_point(p)), dtype=float)


@dataclass(frozen=True)
class OneForm:
    """A 1-form given by its coordinate covector function."""

    name: str
    coeffs: Callable[[np.ndarray], np.ndarray]

    def __call__(self, p) -> np.ndarray:
        return np.asarray(self.coeffs(_as_point(p)), dtype=float)

    def pair(self, u: VectorField, p) -> float:
        return float(self(p) @ u(p))


def constant_field(name: str, vec: Sequence[float]) -> VectorField:
    arr = np.asarray(vec, dtype=float)
    return VectorField(name, lambda p, a=arr: a.copy())


def coordinate_field(dim: int, index: int) -> VectorField:
    e = np.zeros(dim)
    e[index] = 1.0
    return constant_field(f"d{index}", e)


def directional_derivative(f: Callable[[np.ndarray], float], p, direction, step: float = DEFAULT_STEP) -> float:
    """Central-difference derivative of f at p along a fixed direction vector."""
    p = _as_point(p)
    d = np.asarray(direction, dtype=float)
    nd = np.linalg.norm(d)
    if nd == 0.0:
        return 0.0
    h = step * max(1.0, float(np.linalg.norm(p))) / max(1.0, nd)
    return (f(p + h * d) - f(p - h * d)) / (2.0 * h)


def field_derivative(f: Callable[[np.ndarray], float], u: VectorField, step: float = DEFAULT_STEP) -> Callable[[np.ndarray], float]:
    """The scalar function p -> U(f)(p)."""
    return lambda p: directional_derivative(f, p, u(p), step)


def partial_jacobian(func: Callable[[np.ndarray], np.ndarray], p, step: float = DEFAULT_STEP) -> np.ndarray:
    """Jacobian of a vector-valued coordinate function by central differences."""
    p = _as_point(p)
    base = np.asarray(func(p), dtype=float)
    jac = np.zeros((base.size, p.size))
    h = step * max(1.0, float(np.linalg.norm(p)))
    for i in range(p.size):
        dp = np.zeros_like(p)
        dp[i] = h
        jac[:, i] = (np.asarray(func(p + dp)) - np.asarray(func(p - dp))) / (2.0 * h)
    return jac


def lie_bracket(u: VectorField, v: VectorField, step: float = DEFAULT_STEP) -> VectorField:
    """[U, V]^j = U^i d_i V^j - V^i d_i U^j, coefficients by central differences."""

    def coeffs(p: np.ndarray) -> np.ndarray:
        ju = partial_jacobian(u.coeffs, p, step)
        jv = partial_jacobian(v.coeffs, p, step)
        return jv @ u(p) - ju @ v(p)

    return VectorField(f"[{u.name},{v.name}]", coeffs)


class TwoFormOnFields:
    """d of a 1-form, evaluated on vector fields via the invariant formula."""

    def __init__(self, form: OneForm, step: float = DEFAULT_STEP):
        self.form = form
        self.step = step

    def __call__(self, u: VectorField, v: VectorField, p) -> float:
        eta = self.form
        u_of = directional_derivative(lambda q: float(eta(q) @ v(q)), p, u(p), self.step)
        v_of = directional_derivative(lambda q: float(eta(q) @ u(q)), p, v(p), self.step)
        return u_of - v_of - float(eta(p) @ lie_bracket(u, v, self.step)(p))


def exterior_d(form: OneForm, step: float = DEFAULT_STEP) -> TwoFormOnFields:
    """d(eta)(U, V) = U(eta(V)) - V(eta(U)) - eta([U, V])."""
    return TwoFormOnFields(form, step)


def exterior_d_two_form(omega: Callable[[np.ndarray, np.ndarray, np.ndarray], float],
                        u: VectorField, v: VectorField, w: VectorField, p,
                        step: float = DEFAULT_STEP) -> float:
    """Invariant formula for d of a 2-form given as omega(p, u_vec, v_vec)."""
    p = _as_point(p)

    def val(a, b):
        return lambda q: omega(q, a(q), b(q))

    total = directional_derivative(val(v, w), p, u(p), step)
    total -= directional_derivative(val(u, w), p, v(p), step)
    total += directional_derivative(val(u, v), p, w(p), step)
    total -= omega(p, lie_bracket(u, v, step)(p), w(p))
    total += omega(p, lie_bracket(u, w, step)(p), v(p))
    total -= omega(p, lie_bracket(v, w, step)(p), u(p))
    return total


# ---------------------------------------------------------------------------
# chart models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChartModel:
    """A chart with an orthonormal frame, its coframe and the metric."""

    name: str
    dim: int
    frame: tuple
    coframe: tuple
    metric: Callable[[np.ndarray], np.ndarray]
    reeb_index: int | None
    validate: Callable[[np.ndarray], None] = field(repr=False, default=lambda p: None)

    def check_point(self, p) -> np.ndarray:
        p = _as_point(p)
        if p.size != self.dim:
            raise InvalidPoint(f"{self.name} expects {self.dim} coordinates, got {p.size}")
        self.validate(p)
        return p


def _affrot_validate(p: np.ndarray) -> None:
    if p[0] ** 2 + p[1] ** 2 <= 0.0:
        raise InvalidPoint("affrot chart requires x^2 + y^2 > 0")


def _cone_validate(p: np.ndarray) -> None:
    _affrot_validate(p)
    if p[3] <= 0.0:
        raise InvalidPoint("cone chart requires r > 0")


def _affrot_frame():
    X = VectorField("X", lambda p: np.array([p[0], p[1], 0.0]))
    Y = VectorField("Y", lambda p: np.array([-p[1], p[0], -2.0 * (p[0] ** 2 + p[1] ** 2)]))
    T = VectorField("T", lambda p: np.array([-p[1], p[0], 0.0]))
    return X, Y, T


def _affrot_coframe():
    def phi(p):
        zz = p[0] ** 2 + p[1] ** 2
        return np.array([p[0], p[1], 0.0]) / zz

    def psi(p):
        zz = p[0] ** 2 + p[1] ** 2
        return np.array([0.0, 0.0, -0.5 / zz])

    def omega(p):
        zz = p[0] ** 2 + p[1] ** 2
        return np.array([-2.0 * p[1], 2.0 * p[0], 1.0]) / (2.0 * zz)

    return OneForm("phi", phi), OneForm("psi", psi), OneForm("omega", omega)


def _metric_from_coframe(coframe):
    def metric(p):
        rows = np.stack([theta(p) for theta in coframe])
        return rows.T @ rows

    return metric


_AFFROT_COFRAME = _affrot_coframe()

AFFROT = ChartModel(
    name="affrot",
    dim=3,
    frame=_affrot_frame(),
    coframe=_AFFROT_COFRAME,
    metric=_metric_from_coframe(_AFFROT_COFRAME),
    reeb_index=2,
    validate=_affrot_validate,
)


def _cone_frame():
    def scaled(vf3, name):
        return VectorField(name, lambda p, f=vf3: np.append(f(p[:3]) / p[3], 0.0))

    X3, Y3, T3 = AFFROT.frame
    S = VectorField("S", lambda p: np.array([0.0, 0.0, 0.0, 1.0]))
    return scaled(X3, "X"), scaled(Y3, "Y"), scaled(T3, "T"), S


def _cone_coframe():
    def scaled(th3, name):
        return OneForm(name, lambda p, f=th3: np.append(p[3] * f(p[:3]), 0.0))

    phi3, psi3, om3 = AFFROT.coframe
    dr = OneForm("dr", lambda p: np.array([0.0, 0.0, 0.0, 1.0]))
    return scaled(phi3, "phi"), scaled(psi3, "psi"), scaled(om3, "omega"), dr


_CONE_COFRAME = _cone_coframe()

CONE = ChartModel(
    name="cone",
    dim=4,
    frame=_cone_frame(),
    coframe=_CONE_COFRAME,
    metric=_metric_from_coframe(_CONE_COFRAME),
    reeb_index=None,
    validate=_cone_validate,
)


def _heisenberg_frame():
    X = VectorField("X", lambda p: np.array([1.0, 0.0, 2.0 * p[1]]))
    Y = VectorField("Y", lambda p: np.array([0.0, 1.0, -2.0 * p[0]]))
    T = VectorField("T", lambda p: np.array([0.0, 0.0, 2.0]))
    return X, Y, T


def _heisenberg_coframe():
    dx = OneForm("dx", lambda p: np.array([1.0, 0.0, 0.0]))
    dy = OneForm("dy", lambda p: np.array([0.0, 1.0, 0.0]))
    eta = OneForm("eta", lambda p: np.array([-2.0 * p[1], 2.0 * p[0], 1.0]) / 2.0)
    return dx, dy, eta


_HEIS_COFRAME = _heisenberg_coframe()

HEISENBERG = ChartModel(
    name="heisenberg",
    dim=3,
    frame=_heisenberg_frame(),
    coframe=_HEIS_COFRAME,
    metric=_metric_from_coframe(_HEIS_COFRAME),
    reeb_index=2,
)

MODELS = {m.name: m for m in (AFFROT, CONE, HEISENBERG)}


def get_model(name: str) -> ChartModel:
    try:
        return MODELS[name]
    except KeyError:
        raise InvalidPoint(f"unknown model {name!r}; expected one of {sorted(MODELS)}") from None


def named_frame(model: str):
    return get_model(model).frame


def named_coframe(model: str):
    return get_model(model).coframe


def metric_eval(model: str, p) -> np.ndarray:
    m = get_model(model)
    return m.metric(m.check_point(p))


def contact_form(model: str) -> OneForm:
    m = get_model(model)
    if m.reeb_index is None:
        raise InvalidPoint(f"model {model!r} carries no contact form")
    return m.coframe[m.reeb_index]


def duality_residual(model: str, p) -> float:
    """max |theta_i(e_j) - delta_ij| over the frame/coframe pair at p."""
    m = get_model(model)
    p = m.check_point(p)
    vals = np.array([[theta(p) @ e(p) for e in m.frame] for theta in m.coframe])
    return float(np.max(np.abs(vals - np.eye(m.dim))))


def orthonormality_residual(model: str, p) -> float:
    m = get_model(model)
    p = m.check_point(p)
    g = m.metric(p)
    vals = np.array([[e1(p) @ g @ e2(p) for e2 in m.frame] for e1 in m.frame])
    return float(np.max(np.abs(vals - np.eye(m.dim))))


# ---------------------------------------------------------------------------
# cone Kaehler structure
# ---------------------------------------------------------------------------

#: action of the complex structure on orthonormal frame components
#: (X -> Y, Y -> -X, T -> -S, S -> T)
_J_FRAME = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


def frame_matrix(model: str, p) -> np.ndarray:
    """Columns are the frame vectors at p."""
    m = get_model(model)
    p = m.check_point(p)
    return np.stack([e(p) for e in m.frame], axis=1)


def complex_structure_apply(p, v) -> np.ndarray:
    """Apply the cone complex structure to a coordinate tangent vector at p."""
    E = frame_matrix("cone", p)
    comps = np.linalg.solve(E, np.asarray(v, dtype=float))
    return E @ (_J_FRAME @ comps)


def fundamental_two_form(p, u, v) -> float:
    """Omega = r dr ^ omega + r^2 phi ^ psi on coordinate vectors at p."""
    phi, psi, om, dr = (theta(p) for theta in CONE.coframe)
    # cone coframe entries carry one factor of r each, so no extra powers:
    # Omega = phi^r ^ psi^r + dr ^ omega^r.
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)

    def wedge(a, b):
        return (a @ u) * (b @ v) - (a @ v) * (b @ u)

    return wedge(phi, psi) + wedge(dr, om)


def cone_potential_form() -> OneForm:
    """The primitive (r^2/2) omega of the fundamental 2-form."""
    om3 = AFFROT.coframe[2]
    return OneForm("half_r2_omega", lambda p: np.append(0.5 * p[3] ** 2 * om3(p[:3]), 0.0))


def volume_identity_residual(p, step: float = DEFAULT_STEP) -> float:
    """| (omega ^ d omega)(dt, dx, dy) - 1/|z|^4 | on the affrot chart."""
    p = AFFROT.check_point(p)
    om = AFFROT.coframe[2]
    dom = exterior_d(om, step)
    dt = coordinate_field(3, 2)
    dx = coordinate_field(3, 0)
    dy = coordinate_field(3, 1)
    omv = om(p)
    value = (
        float(omv @ dt(p)) * dom(dx, dy, p)
        - float(omv @ dx(p)) * dom(dt, dy, p)
        + float(omv @ dy(p)) * dom(dt, dx, p)
    )
    zz = p[0] ** 2 + p[1] ** 2
    return abs(value - 1.0 / zz**2)


# ---------------------------------------------------------------------------
# unit tangent bundle comparison
# ---------------------------------------------------------------------------

def _tangent_bundle_chart(p: np.ndarray, base_angle: float) -> np.ndarray:
    """(x, y, t) -> (xi, eta, phi) with the angle unwrapped near base_angle."""
    xi = -(p[0] ** 2 + p[1] ** 2)
    eta = p[2]
    phi = math.atan2(p[1], p[0])
    phi = base_angle + wrap_angle(phi - base_angle)
    return np.array([xi, eta, phi])


def tangent_bundle_metric(xi: float) -> np.ndarray:
    """Matrix of (dxi^2 + deta^2)/(4 xi^2) + (dphi - deta/(2 xi))^2 in (xi, eta, phi)."""
    return np.array(
        [
            [1.0 / (4.0 * xi**2), 0.0, 0.0],
            [0.0, 1.0 / (2.0 * xi**2), -1.0 / (2.0 * xi)],
            [0.0, -1.0 / (2.0 * xi), 1.0],
        ]
    )


def koranyi_isometry_residual(p, step: float = 1e-6) -> float:
    """Max-entry residual between the pulled-back bundle metric and the chart metric.

    The chart map (x, y, t) -> (-|z|^2 + i t, arg z) is differentiated by
    central finite differences (with the angle unwrapped), the displayed
    metric on the target is pulled back through the Jacobian and compared
    with the orthonormal-frame metric at p.
    """
    p = AFFROT.check_point(p)
    base_angle = math.atan2(p[1], p[0])
    chart = lambda q: _tangent_bundle_chart(q, base_angle)
    jac = partial_jacobian(chart, p, step)
    target = chart(p)
    pulled = jac.T @ tangent_bundle_metric(target[0]) @ jac
    return float(np.max(np.abs(pulled - AFFROT.metric(p))))
