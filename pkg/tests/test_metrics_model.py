#!/usr/bin/env python3
"""
Kobayashi distance on the ball and the distance to an internally tangent sphere
"""

import math
import os
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(os.path.dirname(current_dir), 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

from geometry_core import RealPoint, make_rng
from metrics_model import (
    BallPair,
    boundary_distance_minimizer,
    critical_point_feasible,
    exact_boundary_distance,
    geodesic_ball_boundary_distance,
    geodesic_radicand,
    kobayashi_distance,
    kobayashi_metric_ball,
    numerical_boundary_distance_oracle,
    sigma,
    sigma_inverse,
)
from squeeze_errors import OutOfRange


def _ball_point(rng, n, max_norm=0.95):
    v = rng.normal(size=2 * n)
    v *= max_norm * rng.uniform() ** (1.0 / (2 * n)) / np.linalg.norm(v)
    return RealPoint.from_array(v)


def test_sigma_values():
    assert sigma(0.0) == 0.0
    assert sigma(0.5) == pytest.approx(math.log(3.0), abs=1e-15)
    with pytest.raises(OutOfRange):
        sigma(1.0)
    with pytest.raises(OutOfRange):
        sigma(-0.1)


@given(st.floats(min_value=0.0, max_value=0.999))
def test_sigma_inverse(x):
    assert sigma_inverse(sigma(x)) == pytest.approx(x, abs=1e-12)


def test_distance_from_origin_is_sigma_of_norm():
    origin = RealPoint((0.0, 0.0, 0.0, 0.0), 2)
    w = RealPoint((0.7, 0.0, 0.0, 0.0), 2)
    assert kobayashi_distance(origin, w) == pytest.approx(sigma(0.7), abs=1e-12)
    assert kobayashi_distance(w, w) == pytest.approx(0.0, abs=1e-12)


def test_ball_pair_validation():
    with pytest.raises(OutOfRange):
        BallPair(RealPoint((1.0, 0.0), 1), RealPoint((0.0, 0.0), 1))
    with pytest.raises(OutOfRange):
        BallPair(RealPoint((0.0, 0.0), 1), RealPoint((0.0, 0.0, 0.0, 0.0), 2))


def test_unitary_invariance():
    rng = make_rng(5)
    for _ in range(20):
        z, w = _ball_point(rng, 2), _ball_point(rng, 2)
        # a random complex-linear unitary, written on R^4
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        uz = RealPoint.from_complex(q @ z.complex_coords())
        uw = RealPoint.from_complex(q @ w.complex_coords())
        assert kobayashi_distance(uz, uw) == pytest.approx(kobayashi_distance(z, w), rel=1e-10, abs=1e-12)


def test_symmetry_and_triangle_inequality():
    rng = make_rng(8)
    for _ in range(50):
        a, b, c = (_ball_point(rng, 2) for _ in range(3))
        ab, bc, ac = kobayashi_distance(a, b), kobayashi_distance(b, c), kobayashi_distance(a, c)
        assert ab == pytest.approx(kobayashi_distance(b, a), rel=1e-12, abs=1e-12)
        assert ac <= ab + bc + 1e-10


def test_metric_at_origin():
    origin = RealPoint((0.0, 0.0, 0.0, 0.0), 2)
    assert kobayashi_metric_ball(origin, np.array([0.3, 0.0, 0.0, 0.4])) == pytest.approx(1.0)


def test_metric_is_derivative_of_distance():
    z = RealPoint((0.4, 0.1, -0.2, 0.3), 2)
    v = np.array([0.2, -0.5, 0.1, 0.3])
    h = 1e-5
    moved = RealPoint.from_array(z.as_array() + h * v)
    assert kobayashi_distance(z, moved) / h == pytest.approx(kobayashi_metric_ball(z, v), rel=1e-3)


def test_closed_form_domain_of_validity():
    with pytest.raises(OutOfRange):
        geodesic_ball_boundary_distance(0.4, 0.5)
    with pytest.raises(OutOfRange):
        geodesic_ball_boundary_distance(0.6, 0.1)
    with pytest.raises(OutOfRange):
        geodesic_ball_boundary_distance(1.0, 0.5)


def test_closed_form_tends_to_sigma_sqrt_rho():
    for rho in (0.5, 0.6, 0.8):
        assert geodesic_ball_boundary_distance(0.999, rho) == pytest.approx(sigma(math.sqrt(rho)), abs=1e-3)


def test_closed_form_is_zero_where_radicand_vanishes():
    r = 0.8
    rho = (1.0 - r) / (1.0 + r)
    assert geodesic_radicand(r, rho) == pytest.approx(0.0, abs=1e-15)
    assert geodesic_ball_boundary_distance(r, rho) == pytest.approx(0.0, abs=1e-6)
    # outside the feasible region the interior critical point misses the sphere
    assert not critical_point_feasible(r, rho)
    assert exact_boundary_distance(r, rho) > 0.0


def test_closed_form_monotone():
    rs = np.linspace(0.52, 0.99, 50)
    rhos = np.linspace(0.02, 0.98, 50)
    for rho in rhos:
        values = [geodesic_ball_boundary_distance(r, rho) for r in rs
                  if r > 1.0 - 2.0 * rho and geodesic_radicand(r, rho) >= 0]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    for r in rs:
        values = [geodesic_ball_boundary_distance(r, rho) for rho in rhos
                  if r > 1.0 - 2.0 * rho and geodesic_radicand(r, rho) >= 0]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_exact_minimum_matches_closed_form_when_feasible():
    for r in np.linspace(0.55, 0.99, 12):
        for rho in np.linspace(0.3, 0.95, 12):
            if critical_point_feasible(r, rho):
                assert exact_boundary_distance(r, rho) == pytest.approx(
                    geodesic_ball_boundary_distance(r, rho), abs=1e-12)


def test_oracle_matches_closed_form():
    value = numerical_boundary_distance_oracle(0.9, 0.6, n=2, grid=250_000)
    assert value == pytest.approx(geodesic_ball_boundary_distance(0.9, 0.6), abs=1e-4)


def test_oracle_minimizer_location():
    _, point = boundary_distance_minimizer(0.9, 0.6, n=2, grid=250_000)
    z1 = point.complex_coords()[0]
    assert z1.real == pytest.approx(2.0 - 1.0 / 0.9, abs=1e-2)
    assert abs(z1.imag) < 1e-2


def test_oracle_independent_of_dimension():
    two = numerical_boundary_distance_oracle(0.8, 0.5, n=2, grid=40_000)
    three = numerical_boundary_distance_oracle(0.8, 0.5, n=3, grid=40_000)
    assert three == pytest.approx(two, abs=1e-6)


def test_oracle_matches_exact_minimum_in_sliver():
    r, rho = 0.8, (1.0 - 0.8) / (1.0 + 0.8)
    assert numerical_boundary_distance_oracle(r, rho, grid=250_000) == pytest.approx(
        exact_boundary_distance(r, rho), abs=1e-3)


def test_oracle_rejects_small_inputs():
    with pytest.raises(OutOfRange):
        numerical_boundary_distance_oracle(0.9, 0.6, n=1)
    with pytest.raises(OutOfRange):
        numerical_boundary_distance_oracle(0.9, 0.6, grid=10)


@pytest.mark.slow
def test_oracle_grid_acceptance():
    for r in np.linspace(0.55, 0.99, 10):
        for rho in np.linspace(0.3, 0.95, 10):
            if not critical_point_feasible(r, rho):
                continue
            closed = geodesic_ball_boundary_distance(r, rho)
            assert numerical_boundary_distance_oracle(r, rho, grid=1_000_000) == pytest.approx(closed, abs=2e-4)


if __name__ == "__main__":
    import pytest as _pytest
    print("🧪 METRICS MODEL TESTS")
    print("=" * 50)
    sys.exit(_pytest.main([__file__, "-v"]))
