#!/usr/bin/env python3
"""
Pinching analyzer tests - enclosing radii, pinching radii and semicontinuity scans
"""

import math
import os
import sys

import numpy as np
import pytest

current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(os.path.dirname(current_dir), 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

from domains_catalog import (
    CartanHartogsParams,
    ball_domain,
    cartan_hartogs_domain,
    ellipsoid_domain,
    ellipsoid_vertex_pinching,
    half_bidisc_domain,
    half_space_cap_domain,
    reinhardt_domain,
    reinhardt_sheared,
    reinhardt_torus_point,
    thullen_domain,
)
from geometry_core import RealPoint
from pinching import (
    PinchingAnalyzer,
    analyze_pinching,
    enclosing_radius,
    intrinsic_pinching_lower_bound,
    pinching_radius,
    semicontinuity_scan,
)
from squeeze_errors import EmptySamples, NotGsc

THULLEN_POINT = RealPoint((1.0, 0.0, 0.0, 0.0), 2)


def test_ball_pinching_is_one():
    result, log = analyze_pinching(ball_domain(2), samples=3000)
    assert result.pinching == pytest.approx(1.0, abs=1e-3)
    assert result.gsc
    assert result.enclosing_radius == pytest.approx(1.0, abs=1e-6)
    assert any("✅" in entry for entry in log)


def test_ball_enclosing_radius_sampled():
    analyzer = PinchingAnalyzer(ball_domain(2), samples=3000, seed=7)
    value = analyzer.enclosing(RealPoint((1.0, 0.0, 0.0, 0.0), 2))
    assert 0.9 < value <= 1.0 + 1e-9


@pytest.mark.parametrize("k", [0.25, 0.5, 0.75])
def test_thullen_pinching_equals_k(k):
    analyzer = PinchingAnalyzer(thullen_domain(k), samples=5000, seed=42)
    result = analyzer.pinch(THULLEN_POINT)
    assert result.pinching == pytest.approx(k, abs=1e-2)
    assert result.lambda_max == pytest.approx(1.0 / k, abs=1e-3)
    assert result.lambda_min == pytest.approx(1.0, abs=1e-3)
    assert result.enclosing_radius == pytest.approx(1.0, abs=1e-6)


def test_thullen_analytic_derivatives_agree(thullen_half_analyzer):
    numeric = thullen_half_analyzer.pinch(THULLEN_POINT)
    analytic = thullen_half_analyzer.pinch(THULLEN_POINT, analytic=True)
    assert analytic.lambda_max == pytest.approx(numeric.lambda_max, abs=1e-4)
    assert analytic.pinching == pytest.approx(numeric.pinching, abs=1e-4)


def test_ellipsoid_vertex():
    axes = (1.0, 1.2, 0.9, 1.1)
    result, _ = analyze_pinching(ellipsoid_domain(axes), samples=5000)
    assert ellipsoid_vertex_pinching(axes) == pytest.approx(0.5625, abs=1e-12)
    assert result.inner_radius == pytest.approx(0.81, abs=1e-3)
    assert result.enclosing_radius == pytest.approx(1.44, abs=1e-2)
    assert result.pinching == pytest.approx(0.5625, abs=1e-2)


def test_cartan_hartogs_pinching():
    domain = cartan_hartogs_domain(CartanHartogsParams("I", (1, 1), k=0.5, m=1))
    result, _ = analyze_pinching(domain, samples=5000)
    assert sorted(result.tangential_eigenvalues) == pytest.approx([0.5, 0.5, 1.0], abs=1e-3)
    assert result.pinching == pytest.approx(0.5, abs=1e-2)


def test_flat_points_have_zero_pinching():
    for domain in (half_space_cap_domain(1), half_bidisc_domain()):
        result, _ = analyze_pinching(domain, samples=2000)
        assert result.pinching == 0.0
        assert not result.gsc


def test_unsheared_reinhardt_is_not_gsc():
    result, _ = analyze_pinching(reinhardt_domain(), samples=5000)
    assert min(abs(v) for v in result.tangential_eigenvalues) < 1e-6
    assert result.enclosing_is_infinite
    assert result.pinching == 0.0
    assert result.to_dict()["enclosing_radius"] == "Infinite"


def test_sheared_reinhardt_is_gsc():
    result, _ = analyze_pinching(reinhardt_sheared(), samples=5000)
    assert result.lambda_min > 0
    assert result.pinching > 0.0
    assert math.isfinite(result.enclosing_radius)


def test_reinhardt_torus_point_is_gsc():
    result = PinchingAnalyzer(reinhardt_domain(), samples=5000).pinch(reinhardt_torus_point())
    assert result.lambda_min > 0
    assert result.pinching > 0.0


def test_enclosing_radius_needs_samples():
    with pytest.raises(EmptySamples):
        enclosing_radius(ball_domain(1), RealPoint((1.0, 0.0), 1), np.zeros((0, 2)))
    with pytest.raises(EmptySamples):
        enclosing_radius(ball_domain(1), RealPoint((1.0, 0.0), 1), np.array([[3.0, 0.0]]))


def test_pinching_radius_with_explicit_cloud():
    cloud = np.array([[-0.99, 0.0], [0.0, 0.99], [0.0, -0.99], [0.5, 0.5]])
    result = pinching_radius(ball_domain(1), RealPoint((1.0, 0.0), 1), cloud, refine=False)
    assert result.tangential_eigenvalues == pytest.approx((1.0,), abs=1e-6)
    assert result.sampled_enclosing_radius <= 1.0
    assert result.pinching == pytest.approx(1.0, abs=1e-6)


def test_intrinsic_lower_bound_takes_best_image():
    cloud = np.array([[-0.9, 0.0, 0.0, 0.0], [0.0, 0.0, 0.5, 0.0]])
    ball = pinching_radius(ball_domain(2), RealPoint((1.0, 0.0, 0.0, 0.0), 2), cloud)
    flat = analyze_pinching(half_space_cap_domain(2), samples=1000)[0]
    bound = intrinsic_pinching_lower_bound([("flat", flat), ("ball", ball)])
    assert bound.source == "ball"
    assert bound.value == pytest.approx(1.0, abs=1e-6)
    assert bound.label == "lower bound"
    with pytest.raises(EmptySamples):
        intrinsic_pinching_lower_bound([])


def test_semicontinuity_on_ball():
    report = semicontinuity_scan(ball_domain(2), RealPoint((1.0, 0.0, 0.0, 0.0), 2), [0.05, 0.02],
                                 samples_per_ring=5, samples=3000)
    assert report.passed
    assert [row["radius"] for row in report.rows] == [0.05, 0.02]
    assert report.liminf_estimate == pytest.approx(1.0, abs=1e-3)


def test_semicontinuity_on_thullen(thullen_half_analyzer):
    report = thullen_half_analyzer.semicontinuity_scan(THULLEN_POINT, [0.01, 0.02], samples_per_ring=5)
    # radii are scanned in decreasing order
    assert [row["radius"] for row in report.rows] == [0.02, 0.01]
    assert all(row["min_pinching"] >= report.base_pinching - 0.05 for row in report.rows)
    assert report.to_frame().shape[0] == 2


def test_semicontinuity_needs_gsc_base():
    with pytest.raises(NotGsc):
        semicontinuity_scan(half_space_cap_domain(1), RealPoint((0.0, 0.0), 1), [0.1], samples=1000)


@pytest.mark.slow
def test_semicontinuity_on_reinhardt_torus():
    report = semicontinuity_scan(reinhardt_domain(), reinhardt_torus_point(), [0.05, 0.02],
                                 samples_per_ring=10, samples=20_000)
    assert report.passed


if __name__ == "__main__":
    import pytest as _pytest
    print("🧪 PINCHING TESTS")
    print("=" * 50)
    sys.exit(_pytest.main([__file__, "-v"]))
