"""Collapsing torus-bundle metrics g_t = (1/t) g + (1 - 1/t) pi*h and the
O'Neill sectional-curvature formulas, plus a Koszul-formula engine for
left-invariant metrics used as an independent cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .frame_curvature import CurvatureFrame, frame_curvature


# --------------------------------------------------------------------------
# homogeneous (left-invariant) curvature oracle
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureConstants:
    """Lie-algebra structure constants c[i,j,k]: [X_i, X_j] = c[i,j,k] X_k."""

    c: np.ndarray
    name: str = ""

    def __post_init__(self):
        c = self.c
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise ValueError("structure constants must be an (n,n,n) array")
        if c.shape[0] > 6:
            raise ValueError("dimension at most 6")
        if np.max(np.abs(c + np.transpose(c, (1, 0, 2)))) != 0.0:
            raise ValueError("structure constants must be antisymmetric in (i,j)")
        if self.jacobi_defect() > 1e-12:
            raise ValueError("Jacobi identity violated")

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def jacobi_defect(self) -> float:
        c = self.c
        # [[X_i,X_j],X_k] cyclic sum
        term = np.einsum("ijm,mkl->ijkl", c, c)
        cyc = term + np.transpose(term, (1, 2, 0, 3)) + np.transpose(term, (2, 0, 1, 3))
        return float(np.max(np.abs(cyc)))


def su2(scale: float = -2.0) -> StructureConstants:
    """su(2) in the convention matching ds1 = 2 s2^s3: [X_i,X_j] = -2 eps_ijk X_k."""
    c = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i, j, k] = scale
        c[j, i, k] = -scale
    return StructureConstants(c, "su2")


def su2_su2() -> StructureConstants:
    c = np.zeros((6, 6, 6))
    block = su2().c
    c[:3, :3, :3] = block
    c[3:, 3:, 3:] = block
    return StructureConstants(c, "su2+su2")


def heisenberg_r() -> StructureConstants:
    """Heisenberg algebra times R: [X_1, X_2] = X_3, X_4 central."""
    c = np.zeros((4, 4, 4))
    c[0, 1, 2] = 1.0
    c[1, 0, 2] = -1.0
    return StructureConstants(c, "heis3+R")


def homogeneous_curvature(
    sc: StructureConstants,
    metric_diag: Sequence[float],
    orientation: int = 1,
    sec_samples: int = 512,
) -> CurvatureFrame:
    """Curvature of the left-invariant metric diag(metric_diag) on the group
    with structure constants sc, in the orthonormal frame X_i / sqrt(d_i)."""
    d = np.asarray(metric_diag, dtype=float)
    if d.shape != (sc.dim,):
        raise ValueError("metric_diag length must match the algebra dimension")
    if np.any(d <= 0.0):
        raise ValueError("metric_diag must be positive")
    rt = np.sqrt(d)
    struct = sc.c * rt[None, None, :] / (rt[:, None, None] * rt[None, :, None])
    return frame_curvature(struct, None, orientation=orientation, sec_samples=sec_samples)


# --------------------------------------------------------------------------
# torus bundles over surfaces / orbifolds
# --------------------------------------------------------------------------

class BundleKind(enum.Enum):
    TRIVIAL_TORUS_OVER_TORUS = "trivial"
    TWISTED_PRODUCT = "twisted"
    NILMANIFOLD = "nilmanifold"


@dataclass(frozen=True)
class BaseOrbifold:
    """The base (Sigma, h): area, Gauss curvature, and cone points to avoid."""

    area: float
    gauss_curvature: Callable[[np.ndarray], float]
    cone_points: tuple = ()

    def curvature_at(self, point) -> float:
        pt = np.atleast_1d(np.asarray(point, dtype=float))
        for cp in self.cone_points:
            if np.allclose(pt, cp):
                raise ValueError("curvature undefined at an orbifold cone point")
        return float(self.gauss_curvature(pt))


def flat_torus_base(periods: tuple[float, float] = (1.0, 1.0)) -> BaseOrbifold:
    return BaseOrbifold(area=periods[0] * periods[1], gauss_curvature=lambda p: 0.0)


@dataclass(frozen=True)
class BundleModel:
    """Flat-torus bundle over a 2-orbifold with totally geodesic fibers.

    ``vertical_obstruction`` returns the vertical part v of [w_1, w_2] for a
    horizontal orthonormal frame, expressed in a g-orthonormal fiber frame;
    it is t-independent along the canonical variation.
    """

    kind: BundleKind
    base: BaseOrbifold
    fiber_metric: np.ndarray          # 2x2 Gram matrix of the flat fiber
    vertical_obstruction: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    @property
    def fiber_area(self) -> float:
        return float(math.sqrt(np.linalg.det(self.fiber_metric)))

    def v_norm2(self, point) -> float:
        v = np.asarray(self.vertical_obstruction(np.atleast_1d(point)), dtype=float)
        return float(v @ v)


_MONODROMY_ANGLES = {2: math.pi, 4: math.pi / 2.0, 6: math.pi / 3.0}


def make_bundle(
    kind: BundleKind,
    fiber_metric: np.ndarray | None = None,
    base: BaseOrbifold | None = None,
    monodromy_order: int = 2,
) -> BundleModel:
    """Build one of the three representative flat-fiber bundle models."""
    f = np.eye(2) if fiber_metric is None else np.asarray(fiber_metric, dtype=float)
    if f.shape != (2, 2) or np.any(np.linalg.eigvalsh(f) <= 0.0):
        raise ValueError("fiber metric must be a 2x2 SPD matrix")
    if kind is BundleKind.TRIVIAL_TORUS_OVER_TORUS:
        return BundleModel(
            kind, base or flat_torus_base(), f, lambda p: np.zeros(2), "T2 x T2"
        )
    if kind is BundleKind.TWISTED_PRODUCT:
        if monodromy_order not in _MONODROMY_ANGLES:
            raise ValueError("monodromy order must be 2, 4, or 6")
        th = _MONODROMY_ANGLES[monodromy_order]
        rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        if np.max(np.abs(rot.T @ f @ rot - f)) > 1e-12 * np.max(np.abs(f)):
            raise ValueError(
                f"order-{monodromy_order} rotation is not an isometry of the given flat fiber"
            )
        base_orb = base or BaseOrbifold(
            area=1.0, gauss_curvature=lambda p: 0.0, cone_points=((0.0, 0.0),)
        )
        return BundleModel(kind, base_orb, f, lambda p: np.zeros(2), f"twisted Z{monodromy_order}")
    if kind is BundleKind.NILMANIFOLD:
        # Heisenberg x S^1 model: v = [w1, w2]^vertical is the unit center
        # direction, |v|_g = 1 everywhere.
        return BundleModel(
            kind,
            base or flat_torus_base(),
            f,
            lambda p: np.array([1.0, 0.0]),
            "nilmanifold",
        )
    raise ValueError(f"unknown bundle kind {kind!r}")


@dataclass(frozen=True)
class SubmersionMetric:
    """The canonical-variation metric g_t = (1/t) g + (1 - 1/t) pi*h."""

    bundle: BundleModel
    t: float

    def __post_init__(self):
        if self.t < 1.0:
            raise ValueError("t must be >= 1")

    def total_volume(self) -> float:
        # fibers are 2-dimensional, so vertical scaling by 1/t divides the
        # fiber area (hence the total volume) by t exactly
        return self.bundle.base.area * self.bundle.fiber_area / self.t

    def vertical_norm2(self, v_norm2_g: float) -> float:
        return v_norm2_g / self.t


def collapse_metric(bundle: BundleModel, t: float) -> SubmersionMetric:
    return SubmersionMetric(bundle, float(t))


@dataclass(frozen=True)
class ONeillCurvatures:
    K_H: float
    K_P: float
    K_V: float = 0.0


def oneill_at(metric: SubmersionMetric, point=(0.1, 0.2)) -> ONeillCurvatures:
    """O'Neill sectional curvatures of g_t at a base point.

    K_H = K(Sigma) - (3/4) g_t(v,v) for the horizontal plane, K_P with the
    full vertical projection v of [w_1,w_2] (the extremal mixed plane), and
    K_V = 0 for the flat, totally geodesic fibers.
    """
    gvv = metric.vertical_norm2(metric.bundle.v_norm2(point))
    k_sigma = metric.bundle.base.curvature_at(point)
    return ONeillCurvatures(
        K_H=k_sigma - 0.75 * gvv,
        K_P=0.25 * gvv,
        K_V=0.0,
    )


def nilmanifold_frame(t: float = 1.0, sec_samples: int = 512) -> CurvatureFrame:
    """Full curvature of the Heisenberg x R collapse metric diag(1,1,1/t,1/t)
    via the left-invariant engine (independent of the O'Neill formulas)."""
    return homogeneous_curvature(heisenberg_r(), [1.0, 1.0, 1.0 / t, 1.0 / t],
                                 sec_samples=sec_samples)


def gauss_bonnet_volume_bound(sec_bound: float, vol: float) -> float:
    """Explicit constant C with |int GB density| <= C * Lambda^2 * Vol for any
    4-metric with |sec| <= Lambda (see docs/conventions.md for the chain)."""
    return (1031.0 / (32.0 * math.pi**2)) * sec_bound**2 * vol
