#!/usr/bin/env python3
"""
Squeezing-function estimates.

Exact values on model domains, the d/diam bound, the product rule, the
boundary estimate near globally strongly convex points, and evaluators for
increasing and decreasing sequences of domains.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from geometry_core import (
    DomainSpec,
    RealPoint,
    as_point_array,
    gradient,
    interior_distance_to_boundary,
    sample_boundary,
)
from pinching import PinchResult, pinching_radius
from squeeze_errors import NotGsc, OutOfRange, OutsideDomain

BOUND_TOL = 1e-12
DIAMETER_SUBSET = 4000
DEPTH_FRACTION = 0.2


class Provenance(str, Enum):
    EXACT = "Exact"
    DIAM_BOUND = "DiamBound"
    BOUNDARY_ESTIMATE = "BoundaryEstimate"
    PRODUCT_BOUND = "ProductBound"
    EMBEDDING_WITNESS = "EmbeddingWitness"
    LIMIT_THEOREM = "LimitTheorem"


class ModelKind(str, Enum):
    BALL = "Ball"
    DISC = "Disc"
    PUNCTURED_DISC = "PuncturedDisc"
    SCALED_PUNCTURED_DISC = "ScaledPuncturedDisc"


@dataclass(frozen=True)
class SqueezeBound:
    lower: float
    upper: float
    provenance: Provenance
    vacuous: bool = False
    heuristic: bool = False
    note: str = ""

    def __post_init__(self):
        lower, upper = float(self.lower), float(self.upper)
        if not (-BOUND_TOL <= lower <= upper + BOUND_TOL and upper <= 1.0 + BOUND_TOL):
            raise OutOfRange(f"Invalid squeezing interval [{lower}, {upper}]")
        object.__setattr__(self, "lower", min(max(lower, 0.0), 1.0))
        object.__setattr__(self, "upper", min(max(upper, 0.0), 1.0))

    @property
    def tag(self) -> str:
        if self.vacuous:
            return "Vacuous"
        if self.heuristic:
            return "Heuristic"
        return self.provenance.value

    def to_dict(self) -> Dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "provenance": self.provenance.value,
            "tag": self.tag,
            "note": self.note,
        }


def exact_squeezing(model: ModelKind, z: RealPoint, c: float = 1.0) -> SqueezeBound:
    """
    Known squeezing values: 1 on balls and discs (homogeneous), |z| on the
    punctured disc and |z|/c on {0 < |z| < c}.
    """
    model = ModelKind(model)
    radius = z.norm()
    if model in (ModelKind.BALL, ModelKind.DISC):
        if model is ModelKind.DISC and z.n != 1:
            raise OutsideDomain(f"The disc lives in C^1, got a point of C^{z.n}")
        if radius >= c:
            raise OutsideDomain(f"|z| = {radius:.6g} is not inside the ball of radius {c:g}")
        return SqueezeBound(1.0, 1.0, Provenance.EXACT)

    if z.n != 1:
        raise OutsideDomain(f"Punctured discs live in C^1, got a point of C^{z.n}")
    scale = 1.0 if model is ModelKind.PUNCTURED_DISC else c
    if not (0.0 < radius < scale):
        raise OutsideDomain(f"|z| = {radius:.6g} is not in the punctured disc of radius {scale:g}")
    value = radius / scale
    return SqueezeBound(value, value, Provenance.EXACT)


def sampled_diameter(samples) -> float:
    """Diameter of a point cloud: exact on a subset, then farthest-point refinement on all points."""
    cloud = as_point_array(samples)
    if len(cloud) < 2:
        return 0.0
    step = max(1, len(cloud) // DIAMETER_SUBSET)
    subset = cloud[::step]
    best, pair = 0.0, (0, 0)
    for start in range(0, len(subset), 500):
        block = subset[start:start + 500]
        dists = np.linalg.norm(block[:, None, :] - subset[None, :, :], axis=-1)
        i, j = np.unravel_index(int(np.argmax(dists)), dists.shape)
        if dists[i, j] > best:
            best, pair = float(dists[i, j]), (start + i, j)

    anchor = subset[pair[0]]
    for _ in range(5):
        dists = np.linalg.norm(cloud - anchor, axis=1)
        far = int(np.argmax(dists))
        if dists[far] <= best + 1e-15:
            break
        best, anchor = float(dists[far]), cloud[far]
    return best


def diam_lower_bound(domain: DomainSpec, z, boundary_samples) -> SqueezeBound:
    """s_D(z) >= delta(z) / diam(D); uses the catalog diameter when one is recorded."""
    delta = interior_distance_to_boundary(domain, z, boundary_samples)
    diameter = domain.metadata.get("diameter") or sampled_diameter(boundary_samples)
    if diameter <= 0:
        raise OutOfRange(f"{domain.name}: sampled diameter is zero")
    return SqueezeBound(min(delta / diameter, 1.0), 1.0, Provenance.DIAM_BOUND,
                        note=f"delta={delta:.6g}, diam={diameter:.6g}")


def product_lower_bound(factors: Sequence[float]) -> float:
    """(sum s_i^-2)^-1/2 for squeezing lower bounds of the factors of a product domain."""
    factors = [float(s) for s in factors]
    if not factors:
        raise OutOfRange("product_lower_bound needs at least one factor")
    for s in factors:
        if not (0.0 < s <= 1.0):
            raise OutOfRange(f"Squeezing factors must lie in (0, 1], got {s}")
    return math.fsum(s ** -2 for s in factors) ** -0.5


def _boundary_radicand(delta: float, e: float, rho: float) -> float:
    if not (e > 0) or not (0.0 < delta / e < 1.0):
        raise OutOfRange(f"Boundary estimate needs 0 < delta/e < 1, got delta = {delta}, e = {e}")
    if not (0.0 < rho <= 1.0):
        raise OutOfRange(f"Boundary estimate needs 0 < rho <= 1, got {rho}")
    t = delta / e
    return 1.0 - (2.0 - t) * (1.0 - rho) / (2.0 * (1.0 - t))


def boundary_estimate(delta: float, e: float, rho: float) -> float:
    """
    sqrt(1 - (2 - delta/e)(1 - rho) / (2 (1 - delta/e))); 0 when the radicand
    is negative (the point is too deep for the estimate).
    """
    radicand = _boundary_radicand(delta, e, rho)
    return math.sqrt(radicand) if radicand > 0 else 0.0


def boundary_estimate_bound(delta: float, e: float, rho: float, note: str = "") -> SqueezeBound:
    radicand = _boundary_radicand(delta, e, rho)
    if radicand <= 0:
        return SqueezeBound(0.0, 1.0, Provenance.BOUNDARY_ESTIMATE, vacuous=True, note=note)
    return SqueezeBound(math.sqrt(radicand), 1.0, Provenance.BOUNDARY_ESTIMATE, note=note)


def boundary_estimate_at_point(
    domain: DomainSpec,
    p: RealPoint,
    depths: Sequence[float],
    interior_samples,
    max_depth: Optional[float] = None,
    pinch: Optional[PinchResult] = None,
) -> List[Tuple[float, SqueezeBound]]:
    """
    Boundary estimates along the inward normal at p.

    rho is the pinching radius at p and e the enclosing radius; depths beyond
    max_depth (default 0.2 e) are reported but marked heuristic.
    """
    pinch = pinch or pinching_radius(domain, p, interior_samples)
    if not pinch.gsc:
        raise NotGsc(f"{domain.name}: pinching radius at {p.coords} is 0")
    e = pinch.enclosing_radius
    limit = DEPTH_FRACTION * e if max_depth is None else max_depth

    nu = gradient(domain, p)
    nu = nu / np.linalg.norm(nu)
    base = p.as_array()
    results = []
    for depth in depths:
        z = base - depth * nu
        if not bool(domain.contains(z)[0]):
            raise OutsideDomain(f"{domain.name}: depth {depth:g} along the normal leaves the domain")
        bound = boundary_estimate_bound(depth, e, pinch.pinching)
        if depth > limit:
            bound = SqueezeBound(bound.lower, bound.upper, bound.provenance, vacuous=bound.vacuous,
                                 heuristic=True, note=f"depth beyond certified range {limit:.4g}")
        results.append((float(depth), bound))
    return results


Evaluator = Callable[[DomainSpec, RealPoint], Union[SqueezeBound, float]]


def _value(result: Union[SqueezeBound, float]) -> float:
    return result.lower if isinstance(result, SqueezeBound) else float(result)


def model_evaluator(domain: DomainSpec, z: RealPoint) -> SqueezeBound:
    """Exact squeezing from the catalog metadata of a model domain."""
    model = domain.metadata.get("model")
    if model is None:
        raise OutOfRange(f"{domain.name} is not a model domain; supply a sampling evaluator")
    scale = domain.metadata.get("scale", 1.0)
    if model is ModelKind.BALL:
        scale = domain.metadata.get("diameter", 2.0) / 2.0
    return exact_squeezing(model, z, scale)


def diam_evaluator(samples: int = 10_000, seed: int = 42) -> Evaluator:
    """Evaluator falling back on the d/diam bound for non-model domains."""

    def evaluate(domain: DomainSpec, z: RealPoint) -> SqueezeBound:
        if "model" in domain.metadata:
            return model_evaluator(domain, z)
        return diam_lower_bound(domain, z, sample_boundary(domain, samples, seed))

    return evaluate


@dataclass
class SequenceReport:
    kind: str
    limit_value: float
    rows: List[Dict] = field(default_factory=list)
    monotone: bool = True
    converges: bool = True
    inequality_holds: bool = True
    note: str = ""

    @property
    def values(self) -> List[float]:
        return [row["value"] for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)


def _check_membership(domains: Sequence[DomainSpec], limit: DomainSpec, z: RealPoint):
    for domain in list(domains) + [limit]:
        if not bool(domain.contains(z.as_array())[0]):
            raise OutsideDomain(f"{z.coords} is not in {domain.name}")


def increasing_sequence_eval(domains: Sequence[DomainSpec], limit: DomainSpec, z: RealPoint,
                             evaluator: Evaluator = model_evaluator) -> SequenceReport:
    """s_{D_k}(z) -> s_D(z) for an exhaustion D_1 < D_2 < ... of D."""
    _check_membership(domains, limit, z)
    limit_value = _value(evaluator(limit, z))
    report = SequenceReport(kind="increasing", limit_value=limit_value)
    for index, domain in enumerate(domains, start=1):
        value = _value(evaluator(domain, z))
        report.rows.append({"k": index, "domain": domain.name, "value": value,
                            "error": abs(value - limit_value), "provenance": Provenance.LIMIT_THEOREM.value})
    errors = [row["error"] for row in report.rows]
    report.monotone = all(b <= a + BOUND_TOL for a, b in zip(errors, errors[1:]))
    report.converges = bool(errors) and errors[-1] <= errors[0] + BOUND_TOL
    return report


def decreasing_sequence_eval(domains: Sequence[DomainSpec], limit: DomainSpec, z: RealPoint,
                             evaluator: Evaluator = model_evaluator, note: str = "") -> SequenceReport:
    """
    For D_1 > D_2 > ... with intersection D only s_D(z) >= limsup s_{D_k}(z) holds;
    equality can fail (thickenings of the Hartogs triangle).
    """
    _check_membership(domains, limit, z)
    limit_value = _value(evaluator(limit, z))
    report = SequenceReport(kind="decreasing", limit_value=limit_value,
                            note=note or "one-sided: s_D(z) >= limsup s_{D_k}(z); equality may fail")
    for index, domain in enumerate(domains, start=1):
        value = _value(evaluator(domain, z))
        report.rows.append({"k": index, "domain": domain.name, "value": value,
                            "gap": limit_value - value, "provenance": Provenance.LIMIT_THEOREM.value})
    values = report.values
    tail = values[len(values) // 2:] if values else []
    report.inequality_holds = bool(tail) and limit_value >= max(tail) - BOUND_TOL
    report.monotone = all(b >= a - BOUND_TOL for a, b in zip(values, values[1:]))
    gaps = [row["gap"] for row in report.rows]
    report.converges = bool(gaps) and abs(gaps[-1]) <= abs(gaps[0]) + BOUND_TOL
    return report
