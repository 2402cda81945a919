"""Report builders behind the service endpoints.

Each builder returns a JSON-ready dict.  Complex numbers are serialised as
[re, im] pairs.  Rows carry their own tolerance: exact-path rows are gated
at 1e-12, finite-difference rows at the gate appropriate to second-order
differencing, and generic identity rows at the request tolerance.
"""

from __future__ import annotations

import math

import numpy as np

from . import confmaps as cm
from . import curvature as cv
from . import frames as fr
from . import groups as gr
from . import sampling as sa
from .boundary import cartan, cross_ratio_triple, xratio_identity_residuals
from .isometries import apply, normalize_quadruple, verify_form

EXACT_TOL = 1e-12
FD_CURV_TOL = 1e-4
FD_RESIDUAL_TOL = 1e-5
CLOSEDNESS_TOL = 1e-6


def _c(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# invariants of a single quadruple
# ---------------------------------------------------------------------------

def build_invariants_report(points, label: str | None, tol: float) -> dict:
    """Full invariant report for one quadruple; raises domain errors as-is."""
    p1, p2, p3, p4 = points
    cart = {
        "123": cartan(p1, p2, p3),
        "124": cartan(p1, p2, p4),
        "134": cartan(p1, p3, p4),
        "234": cartan(p2, p3, p4),
    }
    xr = cross_ratio_triple(p1, p2, p3, p4)
    eqx = xratio_identity_residuals(xr.x1, xr.x2, xr.x3)

    normalized, mover = normalize_quadruple(points)
    images = [apply(mover, p) for p in points]
    expected = normalized.points()

    def point_dist(img, ref):
        if img.at_infinity or ref.at_infinity:
            return 0.0 if img.at_infinity and ref.at_infinity else math.inf
        return abs(img.z - ref.z) + abs(img.t - ref.t)

    norm_res = max(point_dist(img, ref) for img, ref in zip(images, expected))

    cone = cm.to_cone(normalized)
    variety = cm.variety_from_quadruple(points)
    zeta, w = cm.to_complex_pair(normalized)
    crv = cm.variety_equation_residual(xr.x1, xr.x2, cart["123"])
    through_cone = cm.cone_to_variety(cone)
    commutation = max(
        abs(through_cone.w1 - variety.w1),
        abs(through_cone.w2 - variety.w2),
        abs(through_cone.a - variety.a),
    )

    checks = {
        "modulus_identity": bool(eqx[0] < tol),
        "quadratic_identity": bool(eqx[1] < tol),
        "variety_equation": bool(crv < tol),
        "cartan_matches_normal_form": bool(abs(cart["123"] - normalized.a) < tol),
        "normalization_consistent": bool(norm_res < tol),
        "cone_variety_commutation": bool(commutation < tol),
        "mover_preserves_form": bool(verify_form(mover) < tol),
    }
    return {
        "label": label,
        "tol": tol,
        "cartan": cart,
        "cross_ratios": {"x1": _c(xr.x1), "x2": _c(xr.x2), "x3": _c(xr.x3)},
        "eqx_residuals": [float(eqx[0]), float(eqx[1])],
        "crv_residual": float(crv),
        "normalized": {"a": normalized.a, "z": _c(normalized.z), "t": normalized.t},
        "cone_point": {"z": _c(cone.z), "t": cone.t, "r": cone.r},
        "variety_point": {"w1": _c(variety.w1), "w2": _c(variety.w2), "a": variety.a},
        "complex_pair": {"zeta": _c(zeta), "w": _c(w)},
        "normalization_residual": norm_res,
        "checks": checks,
        "passed": all(checks.values()),
    }


# ---------------------------------------------------------------------------
# geometry verification sweep
# ---------------------------------------------------------------------------

def _row(section: str, name: str, expected: float, exact: float | None, fd: float | None,
         tol_exact: float, tol_fd: float) -> dict:
    residual_exact = abs(exact - expected) if exact is not None else None
    residual_fd = abs(fd - expected) if fd is not None else None
    ok = (residual_exact is None or residual_exact < tol_exact) and (
        residual_fd is None or residual_fd < tol_fd
    )
    return {
        "section": section,
        "name": name,
        "expected": expected,
        "exact": exact,
        "fd": fd,
        "residual": max(x for x in (residual_exact, residual_fd, 0.0) if x is not None),
        "tol": tol_fd if fd is not None else tol_exact,
        "passed": bool(ok),
    }


def _residual_row(section: str, name: str, value: float, tol: float, minimum: bool = False) -> dict:
    return {
        "section": section,
        "name": name,
        "expected": None,
        "exact": None,
        "fd": None,
        "residual": value,
        "tol": tol,
        "passed": bool(value > tol) if minimum else bool(value < tol),
    }


def _curvature_rows(model: str, radius: float, points, expect: dict, h2: float) -> list[dict]:
    table = cv.connection_table(model)
    names = table.names
    dim = table.dim
    # per plane, keep the FD value farthest from the expectation over all points
    fd_sec: dict = {}
    for p in points:
        sec = cv.fd_sectional(model, p, h2=h2)
        for key, val in sec.items():
            if key not in fd_sec or abs(val - expect["K"][key]) > abs(fd_sec[key] - expect["K"][key]):
                fd_sec[key] = val
    rows = []
    section = model if model != "cone" else f"cone r={radius:g}"
    for (i, j), target in expect["K"].items():
        rows.append(
            _row(section, f"K({names[i]},{names[j]})", target,
                 table.sectional_at(i, j, radius), fd_sec[(i, j)], EXACT_TOL, FD_CURV_TOL)
        )
    fd_ric = [
        sum(fd_sec[(min(i, j), max(i, j))] for j in range(dim) if j != i) / (dim - 1)
        for i in range(dim)
    ]
    for i, target in enumerate(expect["Ric"]):
        rows.append(
            _row(section, f"Ric({names[i]})", target,
                 table.ricci_at(i, radius), fd_ric[i], EXACT_TOL, FD_CURV_TOL)
        )
    rows.append(
        _row(section, "scalar", expect["scalar"],
             table.scalar_at(radius), sum(fd_ric) / dim, EXACT_TOL, FD_CURV_TOL)
    )
    return rows


def expected_curvature(model: str, radius: float = 1.0) -> dict:
    """Closed-form curvature targets for each model (verified by both paths)."""
    if model == "affrot":
        return {"K": {(0, 1): -7.0, (0, 2): 1.0, (1, 2): 1.0},
                "Ric": [-3.0, -3.0, 1.0], "scalar": -5.0 / 3.0}
    if model == "heisenberg":
        return {"K": {(0, 1): -3.0, (0, 2): 1.0, (1, 2): 1.0},
                "Ric": [-1.0, -1.0, 1.0], "scalar": -1.0 / 3.0}
    if model == "cone":
        r2 = radius**2
        # radial planes of a metric cone are flat; only the (X, Y) plane curves
        return {
            "K": {(0, 1): -8.0 / r2, (0, 2): 0.0, (0, 3): 0.0,
                  (1, 2): 0.0, (1, 3): 0.0, (2, 3): 0.0},
            "Ric": [-8.0 / (3.0 * r2), -8.0 / (3.0 * r2), 0.0, 0.0],
            "scalar": -4.0 / (3.0 * r2),
        }
    raise ValueError(model)


def build_geometry_report(samples: int, seed: int, fd_step: float, tol: float) -> dict:
    rng = sa.make_rng(seed)
    warnings: list[str] = []
    if fd_step > 1e-3:
        warnings.append(
            f"fd-step {fd_step:g} is coarse; first-order residuals degrade like O(h^2)"
        )
    if samples < 1:
        samples = 1
        warnings.append("samples raised to 1")
    n_curv = min(samples, 100)

    rows: list[dict] = []

    for model in ("affrot", "heisenberg"):
        pts = [sa.random_chart_point(rng, model) for _ in range(n_curv)]
        rows.extend(_curvature_rows(model, 1.0, pts, expected_curvature(model), h2=1e-4))
    for radius in (0.5, 1.0, 2.0):
        pts = []
        for _ in range(max(3, n_curv // 3)):
            p = sa.random_chart_point(rng, "cone")
            p[3] = radius
            pts.append(p)
        rows.extend(_curvature_rows("cone", radius, pts, expected_curvature("cone", radius), h2=1e-4))

    # Killing field and Sasaki identity residual maxima
    worst = {"killing_exact": 0.0, "killing_fd": 0.0, "sasaki_exact": 0.0, "sasaki_fd": 0.0}
    for model in ("affrot", "heisenberg"):
        for _ in range(samples):
            u = sa.random_frame_coeffs(rng, 3)
            v = sa.random_frame_coeffs(rng, 3)
            p = sa.random_chart_point(rng, model)
            worst["killing_exact"] = max(worst["killing_exact"], cv.killing_residual(model, u, v))
            worst["sasaki_exact"] = max(worst["sasaki_exact"], cv.sasaki_residual(model, u, v))
            worst["killing_fd"] = max(worst["killing_fd"], cv.killing_residual_fd(model, u, v, p))
            worst["sasaki_fd"] = max(worst["sasaki_fd"], cv.sasaki_residual_fd(model, u, v, p))
    rows.append(_residual_row("identities", "killing max (exact)", worst["killing_exact"], 1e-10))
    rows.append(_residual_row("identities", "killing max (fd)", worst["killing_fd"], FD_RESIDUAL_TOL))
    rows.append(_residual_row("identities", "sasaki max (exact)", worst["sasaki_exact"], 1e-10))
    rows.append(_residual_row("identities", "sasaki max (fd)", worst["sasaki_fd"], FD_RESIDUAL_TOL))

    # closedness of the fundamental 2-form and its exactness witness
    cone_frame = fr.named_frame("cone")
    d_omega_max = 0.0
    witness_max = 0.0
    potential = fr.cone_potential_form()
    d_potential = fr.exterior_d(potential, fd_step)
    for _ in range(min(samples, 30)):
        p = sa.random_chart_point(rng, "cone")
        idx = rng.permutation(4)[:3]
        u, v, w = (cone_frame[i] for i in idx)
        d_omega_max = max(d_omega_max, abs(fr.exterior_d_two_form(fr.fundamental_two_form, u, v, w, p, fd_step)))
        witness_max = max(
            witness_max,
            abs(d_potential(u, v, p) - fr.fundamental_two_form(p, u(p), v(p))),
        )
    rows.append(_residual_row("cone form", "d(fundamental form) max", d_omega_max, CLOSEDNESS_TOL))
    rows.append(_residual_row("cone form", "exactness witness max", witness_max, CLOSEDNESS_TOL))

    # Levi values (strict pseudoconvexity), both routes
    levi_dev = {"siegel_closed": 0.0, "siegel_fd": 0.0, "variety_closed": 0.0, "variety_fd": 0.0}
    for _ in range(min(samples, 100)):
        a = gr.AffRotPoint(sa.random_complex(rng, 0.5, 2.0), rng.uniform(-2.0, 2.0))
        z1, z2 = gr.boundary_embedding(a)
        levi_dev["siegel_closed"] = max(levi_dev["siegel_closed"], abs(cm.levi_siegel_closed(z1, z2) - 1.0))
        levi_dev["siegel_fd"] = max(levi_dev["siegel_fd"], abs(cm.levi_siegel_fd(z1, z2) - 1.0))
        v = sa.random_variety_point(rng)
        target = 4.0 * math.cos(v.a) ** 2
        levi_dev["variety_closed"] = max(levi_dev["variety_closed"], abs(cm.levi_variety_closed(v) - target))
        levi_dev["variety_fd"] = max(levi_dev["variety_fd"], abs(cm.levi_variety_fd(v) - target))
    rows.append(_residual_row("levi", "siegel deviation (closed)", levi_dev["siegel_closed"], 1e-9))
    rows.append(_residual_row("levi", "siegel deviation (fd)", levi_dev["siegel_fd"], FD_RESIDUAL_TOL))
    rows.append(_residual_row("levi", "variety deviation (closed)", levi_dev["variety_closed"], 1e-9))
    rows.append(_residual_row("levi", "variety deviation (fd)", levi_dev["variety_fd"], FD_RESIDUAL_TOL))

    # CR pushforward checks
    cr_max = 0.0
    pair_cr_max = 0.0
    transverse_min = math.inf
    for _ in range(min(samples, 100)):
        v = sa.random_variety_point(rng)
        cr_max = max(cr_max, cm.cr_equivalence_residual(v))
        c = sa.random_cone_point(rng)
        pair_cr_max = max(pair_cr_max, cm.pair_map_pushforward(c, "generator").anti_norm())
        transverse_min = min(transverse_min, cm.pair_map_pushforward(c, "transverse").anti_norm())
    rows.append(_residual_row("pushforward", "CR equivalence max", cr_max, FD_RESIDUAL_TOL))
    rows.append(_residual_row("pushforward", "pair map (0,1) part of generator max", pair_cr_max, FD_RESIDUAL_TOL))
    rows.append(_residual_row("pushforward", "pair map (0,1) part of transverse min", transverse_min, 0.01, minimum=True))

    # isometry with the unit tangent bundle chart, volume form, dualities
    koranyi_max = 0.0
    volume_max = 0.0
    duality_max = 0.0
    reeb_max = 0.0
    bracket_max = 0.0
    affrot_frame = fr.named_frame("affrot")
    omega = fr.contact_form("affrot")
    d_omega = fr.exterior_d(omega, fd_step)
    for _ in range(min(samples, 100)):
        p = sa.random_chart_point(rng, "affrot")
        koranyi_max = max(koranyi_max, fr.koranyi_isometry_residual(p))
        # scale-aware: the target 1/|z|^4 reaches 16 on the sample region
        zz = p[0] ** 2 + p[1] ** 2
        volume_max = max(volume_max, fr.volume_identity_residual(p, fd_step) * min(1.0, zz**2))
        for model in ("affrot", "cone", "heisenberg"):
            q = sa.random_chart_point(rng, model)
            duality_max = max(duality_max, fr.duality_residual(model, q))
        reeb_max = max(reeb_max, abs(omega.pair(affrot_frame[2], p) - 1.0))
        for other in (0, 1):
            reeb_max = max(reeb_max, abs(d_omega(affrot_frame[2], affrot_frame[other], p)))
        bracket = fr.lie_bracket(affrot_frame[0], affrot_frame[1], fd_step)(p)
        closed = 2.0 * (affrot_frame[1](p) - affrot_frame[2](p))
        bracket_max = max(bracket_max, float(np.max(np.abs(bracket - closed))))
    rows.append(_residual_row("charts", "tangent bundle isometry max", koranyi_max, 1e-6))
    rows.append(_residual_row("charts", "volume identity max", volume_max, max(tol, 1e-8)))
    rows.append(_residual_row("charts", "frame/coframe duality max", duality_max, max(tol, 1e-12)))
    rows.append(_residual_row("charts", "reeb property max", reeb_max, max(tol, 1e-8)))
    rows.append(_residual_row("charts", "bracket closed-form max", bracket_max, max(tol, 1e-8)))

    return {
        "samples": samples,
        "seed": seed,
        "fd_step": fd_step,
        "tol": tol,
        "rows": rows,
        "warnings": warnings,
        "passed": all(r["passed"] for r in rows),
    }


# ---------------------------------------------------------------------------
# round-trip sweep
# ---------------------------------------------------------------------------

def _norm_dist(n1, n2) -> float:
    return abs(n1.a - n2.a) + abs(n1.z - n2.z) + abs(n1.t - n2.t)


def build_roundtrips_report(samples: int, seed: int, tol: float) -> dict:
    rng = sa.make_rng(seed)
    warnings: list[str] = []
    if tol < 1e-12:
        warnings.append(
            f"tolerance {tol:g} is below double-precision round-trip noise; expect failures"
        )
    rows: list[dict] = []

    def add(name: str, residual: float, count: int) -> None:
        rows.append({
            "name": name,
            "samples": count,
            "max_residual": residual,
            "tol": tol,
            "passed": bool(residual < tol) if count else True,
        })

    if samples == 0:
        warnings.append("samples=0: nothing exercised, vacuous pass")
        for name in ("cone", "complex pair", "cone<->variety", "cone<->complex pair",
                     "affine/U1 isomorphism", "tangent bundle chart",
                     "normalization well-definedness", "diagram g.b0=variety",
                     "diagram f=b1.b0inv"):
            add(name, 0.0, 0)
        return {"samples": samples, "seed": seed, "tol": tol, "rows": rows,
                "warnings": warnings, "passed": True}

    worst = dict.fromkeys(
        ["cone", "pair", "variety", "fpair", "affine", "bundle", "normalize", "diag_g", "diag_f"], 0.0
    )
    for _ in range(samples):
        n = sa.random_normalized(rng)

        c = cm.to_cone(n)
        worst["cone"] = max(worst["cone"], _norm_dist(n, cm.cone_to_normalized(c)))

        zeta, w = cm.to_complex_pair(n)
        worst["pair"] = max(worst["pair"], _norm_dist(n, cm.complex_pair_to_normalized(zeta, w)))

        c0 = sa.random_cone_point(rng)
        v = cm.cone_to_variety(c0)
        c1 = cm.variety_to_cone(v)
        worst["variety"] = max(
            worst["variety"], abs(c0.z - c1.z) + abs(c0.t - c1.t) + abs(c0.r - c1.r)
        )

        zeta, w = cm.cone_to_complex_pair(c0)
        c2 = cm.complex_pair_to_cone(zeta, w)
        worst["fpair"] = max(worst["fpair"], abs(c0.z - c2.z) + abs(c0.t - c2.t) + abs(c0.r - c2.r))

        a = gr.AffRotPoint(sa.random_complex(rng), rng.uniform(-2.0, 2.0))
        b = gr.from_affine_u1(gr.to_affine_u1(a))
        worst["affine"] = max(worst["affine"], abs(a.z - b.z) + abs(a.t - b.t))
        b2 = gr.from_tangent_bundle(gr.to_tangent_bundle(a))
        worst["bundle"] = max(worst["bundle"], abs(a.z - b2.z) + abs(a.t - b2.t))

        q = sa.random_quadruple(rng)
        n1, _ = normalize_quadruple(q)
        g = sa.random_group_element(rng)
        n2, _ = normalize_quadruple([apply(g, p) for p in q])
        worst["normalize"] = max(worst["normalize"], _norm_dist(n1, n2))

        v1 = cm.cone_to_variety(cm.to_cone(n1))
        v2 = cm.variety_from_quadruple(q)
        worst["diag_g"] = max(
            worst["diag_g"], abs(v1.w1 - v2.w1) + abs(v1.w2 - v2.w2) + abs(v1.a - v2.a)
        )

        zeta1, w1 = cm.cone_to_complex_pair(c)
        zeta2, w2 = cm.to_complex_pair(n)
        worst["diag_f"] = max(worst["diag_f"], abs(zeta1 - zeta2) + abs(w1 - w2))

    add("cone", worst["cone"], samples)
    add("complex pair", worst["pair"], samples)
    add("cone<->variety", worst["variety"], samples)
    add("cone<->complex pair", worst["fpair"], samples)
    add("affine/U1 isomorphism", worst["affine"], samples)
    add("tangent bundle chart", worst["bundle"], samples)
    add("normalization well-definedness", worst["normalize"], samples)
    add("diagram g.b0=variety", worst["diag_g"], samples)
    add("diagram f=b1.b0inv", worst["diag_f"], samples)

    return {
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "rows": rows,
        "warnings": warnings,
        "passed": all(r["passed"] for r in rows),
    }
