"""HTTP service exposing the invariant and verification reports.

POST /invariants        invariant report for one quadruple document
POST /verify-geometry   curvature / identity verification sweep
POST /roundtrips        bijection round-trip sweep
GET  /healthz           liveness probe

A quadruple document is {"points": [p1, p2, p3, p4], "label": optional} where
each entry is {"z": [re, im], "t": num} or the string "inf".  Domain errors
(degenerate points, C-circle configurations, orbit coincidences) come back as
HTTP 422 with the stable error name in the body.
"""

from __future__ import annotations

import math
from typing import Literal, Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator

from . import reports
from .boundary import BoundaryPoint, INFINITY, quadruple
from .errors import DocumentError, GeometryError


class FinitePoint(BaseModel):
    z: tuple[float, float]
    t: float


PointSpec = Union[FinitePoint, Literal["inf"]]


class QuadrupleDocument(BaseModel):
    points: list[PointSpec] = Field(min_length=4, max_length=4)
    label: Optional[str] = None

    @field_validator("points")
    @classmethod
    def _finite_values(cls, pts):
        for p in pts:
            if isinstance(p, FinitePoint) and not all(math.isfinite(x) for x in (*p.z, p.t)):
                raise ValueError("point coordinates must be finite numbers")
        return pts

    def to_points(self):
        out = []
        for p in self.points:
            out.append(INFINITY if p == "inf" else BoundaryPoint.finite(complex(*p.z), p.t))
        try:
            return quadruple(*out)
        except GeometryError as exc:
            raise DocumentError(str(exc)) from exc


class InvariantsRequest(QuadrupleDocument):
    tol: float = 1e-8


class NormalFormModel(BaseModel):
    a: float
    z: tuple[float, float]
    t: float


class ConePointModel(BaseModel):
    z: tuple[float, float]
    t: float
    r: float


class VarietyPointModel(BaseModel):
    w1: tuple[float, float]
    w2: tuple[float, float]
    a: float


class ComplexPairModel(BaseModel):
    zeta: tuple[float, float]
    w: tuple[float, float]


class InvariantsReport(BaseModel):
    label: Optional[str]
    tol: float
    cartan: dict[str, float]
    cross_ratios: dict[str, tuple[float, float]]
    eqx_residuals: tuple[float, float]
    crv_residual: float
    normalized: NormalFormModel
    cone_point: ConePointModel
    variety_point: VarietyPointModel
    complex_pair: ComplexPairModel
    normalization_residual: float
    checks: dict[str, bool]
    passed: bool


class GeometryRequest(BaseModel):
    samples: int = Field(default=100, ge=0, le=100_000)
    seed: int = 0
    fd_step: float = Field(default=1e-5, gt=0)
    tol: float = Field(default=1e-8, gt=0)


class GeometryRow(BaseModel):
    section: str
    name: str
    expected: Optional[float]
    exact: Optional[float]
    fd: Optional[float]
    residual: float
    tol: float
    passed: bool


class GeometryReport(BaseModel):
    samples: int
    seed: int
    fd_step: float
    tol: float
    rows: list[GeometryRow]
    warnings: list[str]
    passed: bool


class RoundtripsRequest(BaseModel):
    samples: int = Field(default=100, ge=0, le=100_000)
    seed: int = 0
    tol: float = Field(default=1e-8, gt=0)


class RoundtripRow(BaseModel):
    name: str
    samples: int
    max_residual: float
    tol: float
    passed: bool


class RoundtripsReport(BaseModel):
    samples: int
    seed: int
    tol: float
    rows: list[RoundtripRow]
    warnings: list[str]
    passed: bool


def create_app() -> FastAPI:
    app = FastAPI(
        title="crgeom",
        description="Boundary invariants and Sasakian/Kaehler verification service",
    )

    @app.exception_handler(GeometryError)
    async def _domain_error(_: Request, exc: GeometryError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": exc.name, "detail": str(exc)})

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/invariants", response_model=InvariantsReport)
    async def invariants(req: InvariantsRequest) -> InvariantsReport:
        points = req.to_points()
        report = reports.build_invariants_report(points, req.label, req.tol)
        return InvariantsReport(**report)

    @app.post("/verify-geometry", response_model=GeometryReport)
    async def verify_geometry(req: GeometryRequest) -> GeometryReport:
        report = reports.build_geometry_report(req.samples, req.seed, req.fd_step, req.tol)
        return GeometryReport(**report)

    @app.post("/roundtrips", response_model=RoundtripsReport)
    async def roundtrips(req: RoundtripsRequest) -> RoundtripsReport:
        report = reports.build_roundtrips_report(req.samples, req.seed, req.tol)
        return RoundtripsReport(**report)

    return app


app = create_app()
