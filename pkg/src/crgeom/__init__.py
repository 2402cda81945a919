"""Numerical toolkit for PU(2,1) boundary invariants and Sasakian geometry.

Core layers:

* :mod:`crgeom.boundary` -- lifts, Hermitian form, Cartan invariant,
  cross-ratios and their identities;
* :mod:`crgeom.isometries` -- form-preserving matrices, elementary
  generators, quadruple normalisation;
* :mod:`crgeom.groups` -- Heisenberg and affine-rotational group models and
  their identifications;
* :mod:`crgeom.frames` / :mod:`crgeom.curvature` -- orthonormal frames,
  exterior calculus, exact Koszul connection and curvature, plus an
  independent finite-difference oracle;
* :mod:`crgeom.confmaps` -- the configuration-space bijections (cone,
  variety, complex pair) and their CR pushforward identities;
* :mod:`crgeom.service` / :mod:`crgeom.cli` -- FastAPI report service and
  its thin command-line client.
"""

from .boundary import (
    BoundaryPoint,
    CrossRatioTriple,
    INFINITY,
    cartan,
    cross_ratio,
    cross_ratio_triple,
    herm,
    lift,
    project,
    quadruple,
    triple,
    xratio_identity_residuals,
)
from .confmaps import ConePointPrime, VarietyPoint
from .isometries import (
    GroupElement,
    NormalizedQuadruple,
    apply,
    dilation_rotation,
    heis_translation,
    inversion,
    normalize_quadruple,
    verify_form,
)

__all__ = [
    "BoundaryPoint",
    "ConePointPrime",
    "CrossRatioTriple",
    "GroupElement",
    "INFINITY",
    "NormalizedQuadruple",
    "VarietyPoint",
    "apply",
    "cartan",
    "cross_ratio",
    "cross_ratio_triple",
    "dilation_rotation",
    "heis_translation",
    "herm",
    "inversion",
    "lift",
    "normalize_quadruple",
    "project",
    "quadruple",
    "triple",
    "verify_form",
    "xratio_identity_residuals",
]

__version__ = "0.1.0"
