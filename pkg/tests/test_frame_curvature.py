"""Frame curvature engine on model spaces with known curvature."""

import math

import numpy as np
import pytest

from collapselab.frame_curvature import (
    PAIR_BASIS,
    curvature_operator,
    frame_curvature,
    frame_from_riemann,
    levi_civita_coefficients,
)
from collapselab.submersion import homogeneous_curvature, su2, su2_su2


def test_pair_basis_orientation():
    # three pairs containing e0, then their Hodge duals, in matching order
    assert PAIR_BASIS[:3] == [(0, 1), (0, 2), (0, 3)]
    assert PAIR_BASIS[3:] == [(2, 3), (3, 1), (1, 2)]


def test_flat_frame_is_flat():
    struct = np.zeros((4, 4, 4))
    fr = frame_curvature(struct)
    assert fr.scalar == 0.0
    assert np.all(fr.riemann4 == 0.0)
    assert fr.w_plus_norm2 == 0.0 and fr.w_minus_norm2 == 0.0


def test_round_three_sphere_from_su2():
    fr = homogeneous_curvature(su2(), np.ones(3))
    assert fr.scalar == pytest.approx(6.0, abs=1e-12)
    assert fr.sec_min == pytest.approx(1.0, abs=1e-10)
    assert fr.sec_max == pytest.approx(1.0, abs=1e-10)


def test_product_of_three_spheres():
    fr = homogeneous_curvature(su2_su2(), np.ones(6))
    assert fr.scalar == pytest.approx(12.0, abs=1e-12)
    # within-factor planes have K = 1, cross-factor planes K = 0
    assert fr.sec_min == pytest.approx(0.0, abs=1e-10)
    assert fr.sec_max == pytest.approx(1.0, abs=1e-10)


def test_levi_civita_antisymmetry():
    rng = np.random.default_rng(7)
    struct = rng.standard_normal((4, 4, 4))
    struct -= struct.transpose(1, 0, 2)  # antisymmetrize C_abc in (a, b)
    gamma = levi_civita_coefficients(struct)
    # metric compatibility: Gamma_abc antisymmetric in the last two slots
    assert np.allclose(gamma, -gamma.transpose(0, 2, 1), atol=1e-12)


def test_curvature_operator_diagonal_is_sectional():
    riem = np.zeros((4, 4, 4, 4))
    for (a, b), k in (((0, 1), 2.0), ((2, 3), -1.0)):
        riem[a, b, b, a] = riem[b, a, a, b] = k
        riem[a, b, a, b] = riem[b, a, b, a] = -k
    op = curvature_operator(riem)
    assert op[0, 0] == 2.0  # plane (0,1)
    assert op[3, 3] == -1.0  # plane (2,3)


def test_norm_decomposition_identity():
    """|Rm|^2 = 4 |W|_F^2 + 2 |ric0|^2 + s^2 / 6 for the dim-4 norms used."""
    from collapselab.radial import Preset, curvature_at, make_metric

    frames = [curvature_at(make_metric(p), r, sec_samples=0)
              for p in (Preset.EGUCHI_HANSON, Preset.BURNS, Preset.ROUND)
              for r in (1.4, 2.3)]
    for fr in frames:
        lhs = fr.riemann_norm2
        rhs = (4.0 * (fr.w_plus_norm2 + fr.w_minus_norm2)
               + 2.0 * fr.ricci_traceless_norm2 + fr.scalar**2 / 6.0)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


def test_frame_from_riemann_matches_frame_curvature():
    fr1 = homogeneous_curvature(su2(), np.array([1.0, 1.2, 0.8]))
    fr2 = frame_from_riemann(fr1.riemann4)
    assert fr2.scalar == pytest.approx(fr1.scalar)
    assert np.allclose(fr2.ricci, fr1.ricci)


def test_scaling_law():
    """Scaling the metric by lambda^2 divides curvature by lambda^2."""
    fr1 = homogeneous_curvature(su2(), np.ones(3))
    fr4 = homogeneous_curvature(su2(), 4.0 * np.ones(3))
    assert fr4.scalar == pytest.approx(fr1.scalar / 4.0)
    assert fr4.sec_max == pytest.approx(fr1.sec_max / 4.0, abs=1e-12)
