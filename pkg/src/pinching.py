#!/usr/bin/env python3
"""
Ball Pinching Analyzer - enclosing radius e_D(p) and pinching radius B_D(p)

For a boundary point p with outward unit normal nu, the ball of radius R
internally tangent at p contains z iff |z - p|^2 < 2R <p - z, nu>, so

    e_D(p) = sup_z |z - p|^2 / (2 <p - z, nu>)

over the domain, and B_D(p) = (1/lambda) / e_D(p) where lambda is the largest
eigenvalue of the unit-normalized Hessian restricted to the tangent space.
Sampled suprema are lower bounds on e_D(p); the pinching values are the
corresponding upper bounds on B_D(p).
"""

import math
from dataclasses import dataclass, field, asdict
from datetime import datetime
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from geometry_core import (
    BOUNDARY_TOL,
    BoundarySampler,
    DomainSpec,
    GRADIENT_FLOOR,
    SAMPLE_TOL,
    RealPoint,
    as_point_array,
    gradient,
    hessian_at_boundary,
    jacobi_eigenvalues,
    parallel_map,
    tangent_basis,
)
from squeeze_errors import DegenerateGradient, EmptySamples, NotGsc

SUPPORT_TOL = 1e-12
NEAR_POINT_TOL = 1e-4
FLAT_TOL = 1e-12
FLAT_CURVATURE_TOL = 1e-6
ASCENT_ITERATIONS = 50
ASCENT_BACKTRACKS = 20


@dataclass(frozen=True)
class PinchResult:
    point: RealPoint
    enclosing_radius: float
    sampled_enclosing_radius: float
    lambda_max: float
    lambda_min: float
    inner_radius: float
    pinching: float
    gsc: bool
    tangential_eigenvalues: Tuple[float, ...] = ()

    @property
    def enclosing_is_infinite(self) -> bool:
        return math.isinf(self.enclosing_radius)

    def to_dict(self) -> Dict:
        row = asdict(self)
        row["point"] = list(self.point.coords)
        row["tangential_eigenvalues"] = list(self.tangential_eigenvalues)
        for key in ("enclosing_radius", "sampled_enclosing_radius", "inner_radius"):
            if math.isinf(row[key]):
                row[key] = "Infinite"
        return row


def _enclosing_ratio(p: np.ndarray, nu: np.ndarray, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    d = p - z
    support = d @ nu
    dist_sq = np.sum(d * d, axis=-1)
    return d, support, dist_sq


def _ascend(domain: DomainSpec, p: np.ndarray, nu: np.ndarray, start: np.ndarray, value: float) -> float:
    """Gradient ascent on R(z) = |p - z|^2 / (2 <p - z, nu>), kept inside {rho < 0}."""
    z = start.copy()
    for _ in range(ASCENT_ITERATIONS):
        d = p - z
        s = float(d @ nu)
        if s <= SUPPORT_TOL:
            break
        dist_sq = float(d @ d)
        direction = (-2.0 * s * d + dist_sq * nu) / (2.0 * s * s)
        norm = float(np.linalg.norm(direction))
        if norm == 0.0:
            break
        step = 0.05 * math.sqrt(dist_sq)
        improved = False
        for _ in range(ASCENT_BACKTRACKS):
            trial = z + step * direction / norm
            dt = p - trial
            st = float(dt @ nu)
            if st > SUPPORT_TOL and bool(domain.contains(trial)[0]):
                trial_value = float(dt @ dt) / (2.0 * st)
                if trial_value > value:
                    z, value, improved = trial, trial_value, True
                    break
            step *= 0.5
        if not improved:
            break
    return value


def enclosing_radius(
    domain: DomainSpec,
    p: Union[RealPoint, np.ndarray],
    interior_samples,
    refine: bool = True,
) -> float:
    """
    Sampled e_D(p); math.inf when some sample lies on or beyond the tangent plane.

    Samples within 1e-4 * max(1, |p|) of p are left out of the tangent-plane test,
    where the support gap is second order in the distance.
    """
    x = p.as_array() if isinstance(p, RealPoint) else np.asarray(p, dtype=float)
    grad = gradient(domain, x)
    grad_norm = float(np.linalg.norm(grad))
    if grad_norm <= GRADIENT_FLOOR:
        raise DegenerateGradient(f"{domain.name}: |grad rho| = {grad_norm:.3e} at {x.tolist()}")
    nu = grad / grad_norm

    cloud = as_point_array(interior_samples, domain.n)
    if cloud.size == 0:
        raise EmptySamples("enclosing_radius needs interior samples")
    cloud = cloud[domain.contains(cloud)]
    if cloud.size == 0:
        raise EmptySamples("None of the supplied samples lies inside the domain")

    _, support, dist_sq = _enclosing_ratio(x, nu, cloud)
    far = np.sqrt(dist_sq) > NEAR_POINT_TOL * max(1.0, float(np.linalg.norm(x)))
    if np.any(far & (support <= SUPPORT_TOL)):
        return math.inf

    usable = support > SUPPORT_TOL
    if not np.any(usable):
        raise EmptySamples("No sample is usable for the enclosing ratio")
    ratios = dist_sq[usable] / (2.0 * support[usable])
    best = int(np.argmax(ratios))
    value = float(ratios[best])
    if refine:
        value = _ascend(domain, x, nu, cloud[usable][best], value)
    return value


def pinching_radius(
    domain: DomainSpec,
    p: Union[RealPoint, np.ndarray],
    interior_samples,
    analytic: bool = False,
    refine: bool = True,
    boundary_tol: float = BOUNDARY_TOL,
) -> PinchResult:
    """
    Pinching radius B_D(p) = (1/lambda) / e_D(p).

    The enclosing radius used is the larger of the sampled supremum and the
    curvature bound 1/lambda_min; a flat tangential direction (lambda_min ~ 0)
    admits no tangent ball containing D, so e_D(p) is infinite there.
    """
    point = p if isinstance(p, RealPoint) else RealPoint.from_array(p)
    data = hessian_at_boundary(domain, point, analytic=analytic, boundary_tol=boundary_tol)
    basis = tangent_basis(data.unit_gradient)
    restricted = basis.T @ data.hessian @ basis
    eigenvalues = jacobi_eigenvalues(0.5 * (restricted + restricted.T))
    lambda_max, lambda_min = float(eigenvalues[-1]), float(eigenvalues[0])

    sampled = enclosing_radius(domain, point, interior_samples, refine=refine)
    if lambda_min <= FLAT_CURVATURE_TOL:
        effective = math.inf
    else:
        effective = max(sampled, 1.0 / lambda_min)

    inner = 1.0 / lambda_max if lambda_max > FLAT_TOL else math.inf
    if lambda_max <= FLAT_TOL or math.isinf(effective):
        pinching = 0.0
    else:
        pinching = inner / effective

    return PinchResult(
        point=point,
        enclosing_radius=effective,
        sampled_enclosing_radius=sampled,
        lambda_max=lambda_max,
        lambda_min=lambda_min,
        inner_radius=inner,
        pinching=pinching,
        gsc=pinching > 0.0,
        tangential_eigenvalues=tuple(float(v) for v in eigenvalues),
    )


@dataclass
class SemicontinuityReport:
    base_pinching: float
    tolerance: float
    rows: List[Dict] = field(default_factory=list)

    @property
    def liminf_estimate(self) -> float:
        return self.rows[-1]["min_pinching"] if self.rows else math.nan

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(
            row["min_pinching"] >= self.base_pinching - self.tolerance for row in self.rows
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)


@dataclass(frozen=True)
class IntrinsicPinchBound:
    value: float
    source: str
    label: str = "lower bound"


def intrinsic_pinching_lower_bound(candidates: Sequence[Tuple[str, PinchResult]]) -> IntrinsicPinchBound:
    """Max of B over cataloged biholomorphic images; a lower bound on IB_D(p)."""
    if not candidates:
        raise EmptySamples("No cataloged images supplied")
    name, best = max(candidates, key=lambda item: item[1].pinching)
    return IntrinsicPinchBound(value=best.pinching, source=name)


class PinchingAnalyzer:
    """
    Draws the sample clouds for a domain once and evaluates pinching data at
    boundary points, rings around them and scans.
    """

    def __init__(self, domain: DomainSpec, samples: int = 100_000, seed: int = 42,
                 verbose: bool = False, boundary_tol: float = BOUNDARY_TOL,
                 sample_tol: float = SAMPLE_TOL):
        self.domain = domain
        self.samples = samples
        self.seed = seed
        self.boundary_tol = boundary_tol
        self.sample_tol = sample_tol
        self.verbose = verbose
        self.processing_log = []
        self.sampler = BoundarySampler(domain, seed, logger=self)
        self._interior = None

    def _ensure_samples(self):
        if self._interior is None:
            self.sampler.sample(self.samples, tolerance=self.sample_tol)
            self._interior = np.vstack([self.sampler.interior, self.sampler.anchors])

    @property
    def interior(self) -> np.ndarray:
        self._ensure_samples()
        return self._interior

    @property
    def boundary(self) -> np.ndarray:
        self._ensure_samples()
        return self.sampler.boundary

    def pinch(self, point: RealPoint, analytic: bool = False) -> PinchResult:
        result = pinching_radius(self.domain, point, self.interior, analytic=analytic,
                                 boundary_tol=self.boundary_tol)
        e_text = "Infinite" if result.enclosing_is_infinite else f"{result.enclosing_radius:.6f}"
        self._log(f"📊 {self.domain.name} at {point.coords}: lambda = {result.lambda_max:.6f}, "
                  f"e = {e_text}, B = {result.pinching:.6f}")
        return result

    def enclosing(self, point: RealPoint) -> float:
        return enclosing_radius(self.domain, point, self.interior)

    def semicontinuity_scan(self, base: RealPoint, radii: Sequence[float], samples_per_ring: int = 20,
                            tolerance: float = 0.05) -> SemicontinuityReport:
        """Ring minima of the pinching radius around base for decreasing radii."""
        radii = list(radii)
        if any(b >= a for a, b in zip(radii, radii[1:])):
            radii = sorted(radii, reverse=True)
        base_result = self.pinch(base)
        if not base_result.gsc:
            raise NotGsc(f"{self.domain.name}: pinching at the base point is 0")

        self._log(f"🔄 Semicontinuity scan over {len(radii)} rings")
        report = SemicontinuityReport(base_pinching=base_result.pinching, tolerance=tolerance)
        interior = self.interior
        for index, radius in enumerate(radii):
            ring = self.sampler.sample_near(base.as_array(), radius, samples_per_ring, seed_offset=index)
            values = parallel_map(
                lambda q: pinching_radius(self.domain, q, interior, boundary_tol=self.boundary_tol).pinching,
                list(ring))
            report.rows.append({
                "radius": float(radius),
                "points": len(values),
                "min_pinching": float(min(values)),
                "max_pinching": float(max(values)),
            })
        status = "✅" if report.passed else "⚠️"
        self._log(f"{status} liminf estimate {report.liminf_estimate:.6f} vs base {report.base_pinching:.6f}")
        return report

    def _log(self, message: str):
        """Add to processing log."""
        timestamp = datetime.now().strftime("%H:%M:%S")
        log_entry = f"[{timestamp}] {message}"
        self.processing_log.append(log_entry)
        if self.verbose:
            print(log_entry)


def semicontinuity_scan(domain: DomainSpec, base: RealPoint, radii: Sequence[float],
                        samples_per_ring: int = 20, samples: int = 20_000, seed: int = 42,
                        tolerance: float = 0.05) -> SemicontinuityReport:
    analyzer = PinchingAnalyzer(domain, samples=samples, seed=seed)
    return analyzer.semicontinuity_scan(base, radii, samples_per_ring, tolerance)


def analyze_pinching(domain: DomainSpec, point: Optional[RealPoint] = None, samples: int = 100_000,
                     seed: int = 42) -> Tuple[PinchResult, List[str]]:
    """
    Convenience wrapper: pinching data at point (default: the catalog's boundary point).

    Returns:
        (PinchResult, processing_log)
    """
    if point is None:
        point = RealPoint(tuple(domain.metadata["boundary_point"]), domain.n)
    analyzer = PinchingAnalyzer(domain, samples=samples, seed=seed)
    return analyzer.pinch(point), analyzer.processing_log
