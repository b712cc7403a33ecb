#!/usr/bin/env python3
"""
Invariant metrics on model domains.

sigma(x) = log((1+x)/(1-x)) is the Poincare distance from 0 to x in the disc;
on the unit ball B^n the Kobayashi distance is sigma(|phi_z(w)|) for the
automorphism phi_z exchanging z and 0.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from geometry_core import RealPoint
from squeeze_errors import NonFinite, OutOfRange

RADICAND_CLAMP = 1e-14
MIN_ORACLE_GRID = 1000


def sigma(x: float) -> float:
    """log((1+x)/(1-x)) for 0 <= x < 1."""
    if not (0.0 <= x < 1.0):
        raise OutOfRange(f"sigma needs 0 <= x < 1, got {x}")
    return math.log1p(x) - math.log1p(-x)


def sigma_inverse(y: float) -> float:
    """(e^y - 1)/(e^y + 1), the inverse of sigma."""
    if not (y >= 0.0):
        raise OutOfRange(f"sigma_inverse needs y >= 0, got {y}")
    return math.tanh(0.5 * y)


@dataclass(frozen=True)
class BallPair:
    z: RealPoint
    w: RealPoint

    def __post_init__(self):
        if self.z.n != self.w.n:
            raise OutOfRange(f"Points live in different dimensions: {self.z.n} vs {self.w.n}")
        for label, point in (("z", self.z), ("w", self.w)):
            if point.norm() >= 1.0:
                raise OutOfRange(f"{label} = {point.coords} is not inside the unit ball")

    @property
    def n(self) -> int:
        return self.z.n


def _distance_arrays(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Vectorized Kobayashi distance for complex arrays of shape (N, n); inf on the sphere."""
    inner = np.sum(z * np.conj(w), axis=-1)
    zz = np.sum(np.abs(z) ** 2, axis=-1)
    ww = np.sum(np.abs(w) ** 2, axis=-1)
    a = np.abs(1.0 - inner)
    s = np.sum(np.abs(z - w) ** 2, axis=-1) + np.abs(inner) ** 2 - zz * ww
    if np.any(s < -RADICAND_CLAMP):
        raise NonFinite(f"Negative distance radicand {float(np.min(s)):.3e}")
    s = np.maximum(s, 0.0)
    # A^2 - S = (1-|z|^2)(1-|w|^2), which avoids the cancellation in A - sqrt(S)
    product = (1.0 - zz) * (1.0 - ww)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = 2.0 * np.log(a + np.sqrt(s)) - np.log(product)
    return np.where(product > 0, np.maximum(value, 0.0), np.inf)


def kobayashi_distance_ball(pair: BallPair) -> float:
    """Kobayashi distance between two points of B^n."""
    z = pair.z.complex_coords()[None, :]
    w = pair.w.complex_coords()[None, :]
    return float(_distance_arrays(z, w)[0])


def kobayashi_distance(z: RealPoint, w: RealPoint) -> float:
    return kobayashi_distance_ball(BallPair(z, w))


def kobayashi_metric_ball(z: RealPoint, v: np.ndarray) -> float:
    """
    Infinitesimal Kobayashi (= Caratheodory) metric of B^n at z in direction v,
    normalized like sigma so that it equals 2|v| at the origin.
    """
    zc = z.complex_coords()
    vc = np.asarray(v, dtype=float)
    vc = vc[0::2] + 1j * vc[1::2]
    depth = 1.0 - float(np.sum(np.abs(zc) ** 2))
    if depth <= 0:
        raise OutOfRange(f"{z.coords} is not inside the unit ball")
    inner = abs(complex(np.sum(vc * np.conj(zc))))
    return 2.0 * math.sqrt(float(np.sum(np.abs(vc) ** 2)) / depth + inner ** 2 / depth ** 2)


def _check_model_parameters(r: float, rho: float):
    if not (0.0 < rho < 1.0):
        raise OutOfRange(f"Need 0 < rho < 1, got rho = {rho}")
    if not (0.0 <= r < 1.0):
        raise OutOfRange(f"Need 0 <= r < 1, got r = {r}")


def geodesic_radicand(r: float, rho: float) -> float:
    return 1.0 - (1.0 + r) * (1.0 - rho) / (2.0 * r)


def geodesic_ball_boundary_distance(r: float, rho: float) -> float:
    """
    Closed-form Kobayashi distance from (r, 0, ..., 0) to the sphere of radius rho
    internally tangent to the unit sphere at (1, 0, ..., 0).

    Valid for 0 < rho < 1 and max(1/2, 1 - 2 rho) < r < 1; see
    critical_point_feasible for the part of that region where it is the true minimum.
    """
    if not (0.0 < rho < 1.0) or not (max(0.5, 1.0 - 2.0 * rho) < r < 1.0):
        raise OutOfRange(
            f"Closed form needs 0 < rho < 1 and max(1/2, 1-2rho) < r < 1, got r = {r}, rho = {rho}",
            hint="Use exact_boundary_distance or the numerical oracle outside this region.",
        )
    radicand = geodesic_radicand(r, rho)
    if radicand < -1e-12:
        raise OutOfRange(f"Closed form radicand is negative ({radicand:.3e}) at r = {r}, rho = {rho}")
    return sigma(math.sqrt(max(radicand, 0.0)))


def critical_point_feasible(r: float, rho: float) -> bool:
    """True when the interior critical point x = 2 - 1/r lies on the sphere's real trace."""
    _check_model_parameters(r, rho)
    return r > 0 and 2.0 - 1.0 / r >= 1.0 - 2.0 * rho


def exact_boundary_distance(r: float, rho: float) -> float:
    """
    True minimum of the distance from (r, 0, ...) to the sphere, valid for all
    0 < r < 1 and 0 < rho < 1 (the critical point is clamped to the sphere).
    """
    _check_model_parameters(r, rho)
    x_star = max(2.0 - 1.0 / r, 1.0 - 2.0 * rho) if r > 0 else 1.0 - 2.0 * rho
    psi = (1.0 - x_star) / (1.0 - r * x_star) ** 2
    phi_min = 1.0 - 2.0 * (1.0 - r * r) * (1.0 - rho) * psi
    return sigma(math.sqrt(min(max(phi_min, 0.0), 1.0 - 1e-16)))


def _sphere_points(rho: float, n: int, amplitudes: np.ndarray, angles: np.ndarray) -> np.ndarray:
    a, theta = np.meshgrid(amplitudes, angles, indexing="ij")
    a, theta = a.ravel(), theta.ravel()
    points = np.zeros((a.size, n), dtype=complex)
    points[:, 0] = (1.0 - rho) + rho * a * np.exp(1j * theta)
    points[:, 1] = rho * np.sqrt(np.clip(1.0 - a * a, 0.0, None))
    return points


def boundary_distance_minimizer(r: float, rho: float, n: int = 2,
                                grid: int = 1_000_000) -> Tuple[float, RealPoint]:
    """
    Direct minimization of the distance from (r, 0, ...) over the sphere.

    Up to the unitary symmetry fixing the first axis the sphere is swept by
    z1 = (1-rho) + rho a e^{i theta}, z2 = rho sqrt(1-a^2); a coarse grid is
    followed by one zoomed grid around the best cell.

    Returns:
        (minimum distance, minimizing point)
    """
    _check_model_parameters(r, rho)
    if n < 2:
        raise OutOfRange(f"The oracle sweeps a sphere in C^n with n >= 2, got n = {n}")
    if grid < MIN_ORACLE_GRID:
        raise OutOfRange(f"Oracle grid must be at least {MIN_ORACLE_GRID}, got {grid}")

    side = max(2, int(round(math.sqrt(grid))))
    w = np.zeros((1, n), dtype=complex)
    w[0, 0] = r

    amplitudes = np.linspace(0.0, 1.0, side)
    angles = 2.0 * math.pi * np.arange(side) / side
    points = _sphere_points(rho, n, amplitudes, angles)
    values = _distance_arrays(points, w)
    best = int(np.argmin(values))
    best_value, best_point = float(values[best]), points[best]

    i, j = divmod(best, side)
    da, dt = 2.0 / (side - 1), 2.0 * 2.0 * math.pi / side
    zoom_a = np.linspace(max(0.0, amplitudes[i] - da), min(1.0, amplitudes[i] + da), side)
    zoom_t = np.linspace(angles[j] - dt, angles[j] + dt, side)
    zoom_points = _sphere_points(rho, n, zoom_a, zoom_t)
    zoom_values = _distance_arrays(zoom_points, w)
    zoom_best = int(np.argmin(zoom_values))
    if zoom_values[zoom_best] < best_value:
        best_value, best_point = float(zoom_values[zoom_best]), zoom_points[zoom_best]

    return best_value, RealPoint.from_complex(best_point.tolist())


def numerical_boundary_distance_oracle(r: float, rho: float, n: int = 2, grid: int = 1_000_000) -> float:
    value, _ = boundary_distance_minimizer(r, rho, n, grid)
    return value
