#!/usr/bin/env python3
"""
Geometry Core - points of C^n as real vectors, defining functions and boundary sampling

Provides the plumbing every other module builds on:
- RealPoint / DomainSpec / HessianData containers
- Central finite-difference gradients and boundary Hessians
- Cyclic Jacobi symmetric eigenvalues
- Seeded boundary sampling by sign bracketing + bisection
"""

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from squeeze_errors import (
    DegenerateGradient,
    EmptySamples,
    NoBoundaryFound,
    NonFinite,
    NotOnBoundary,
    NotSymmetric,
    OutOfRange,
    OutsideDomain,
    ShapeMismatch,
)

# Numerical defaults (per-call keyword overrides everywhere)
GRAD_STEP = 1e-6
HESS_STEP = 1e-4
BOUNDARY_TOL = 1e-6
GRADIENT_FLOOR = 1e-8
SYMMETRY_TOL = 1e-8
SAMPLE_TOL = 1e-8
BISECTION_STEPS = 64
MAX_SAMPLING_ROUNDS = 25
MAX_SAMPLING_BATCH = 400_000
MIN_SAMPLING_YIELD = 1e-3
MAX_JACOBI_SWEEPS = 100

# RNG stream ids, so each consumer of a seed draws independent numbers
STREAM_BOUNDARY = 0
STREAM_RING = 1
STREAM_TARGETS = 2
STREAM_ROTATION = 3
STREAM_DIAMETER = 4

THREADS_ENV = "SQUEEZE_LAB_THREADS"


@dataclass(frozen=True)
class RealPoint:
    """A point of C^n as (x1, y1, ..., xn, yn); z_j = coords[2j] + i*coords[2j+1]."""

    coords: Tuple[float, ...]
    n: int

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if self.n < 1 or len(coords) != 2 * self.n:
            raise ShapeMismatch(f"RealPoint needs 2n = {2 * self.n} coordinates, got {len(coords)}")
        if not all(math.isfinite(c) for c in coords):
            raise NonFinite(f"RealPoint has non-finite coordinates: {coords}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_array(cls, values) -> "RealPoint":
        arr = np.asarray(values, dtype=float).ravel()
        return cls(tuple(arr.tolist()), arr.size // 2 if arr.size % 2 == 0 else -1)

    @classmethod
    def from_complex(cls, zs: Sequence[complex]) -> "RealPoint":
        coords = []
        for z in zs:
            z = complex(z)
            coords.extend([z.real, z.imag])
        return cls(tuple(coords), len(zs))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def complex_coords(self) -> np.ndarray:
        arr = self.as_array()
        return arr[0::2] + 1j * arr[1::2]

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """
    A bounded domain {rho < 0} inside bbox, minus an optional excluded analytic set.

    rho and excluded_set act on batches: arrays of shape (N, 2n) -> (N,).
    excluded_points returns representative points of the removed set
    (punctures, axes) which count as effective boundary for embeddings.
    boundary_sampler, when given, draws (boundary, near-boundary interior,
    interior anchor) triples directly from a parametrization of {rho = 0};
    domains whose rho jumps across part of the bbox supply one.
    """

    name: str
    n: int
    rho: Callable[[np.ndarray], np.ndarray]
    bbox: Tuple[np.ndarray, np.ndarray]
    excluded_set: Optional[Callable[[np.ndarray], np.ndarray]] = None
    excluded_points: Optional[Callable[[int], np.ndarray]] = None
    boundary_sampler: Optional[Callable[[np.random.Generator, int], Tuple[np.ndarray, np.ndarray, np.ndarray]]] = None
    analytic_gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    analytic_hessian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    metadata: Dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return 2 * self.n

    def evaluate(self, x) -> np.ndarray:
        """Evaluate rho on one point (returns float) or a batch (returns array)."""
        arr = np.asarray(x, dtype=float)
        single = arr.ndim == 1
        batch = np.atleast_2d(arr)
        if batch.shape[1] != self.dim:
            raise ShapeMismatch(f"{self.name}: expected {self.dim} real coordinates, got {batch.shape[1]}")
        if batch.shape[0] == 0:
            return np.zeros(0)
        with np.errstate(all="ignore"):
            values = np.asarray(self.rho(batch), dtype=float).reshape(-1)
        return float(values[0]) if single else values

    def is_excluded(self, x) -> np.ndarray:
        batch = np.atleast_2d(np.asarray(x, dtype=float))
        if self.excluded_set is None or batch.shape[0] == 0:
            return np.zeros(len(batch), dtype=bool)
        with np.errstate(all="ignore"):
            return np.asarray(self.excluded_set(batch), dtype=bool).reshape(-1)

    def contains(self, x) -> np.ndarray:
        """Membership rho < 0, finite, not excluded; works on batches."""
        batch = np.atleast_2d(np.asarray(x, dtype=float))
        values = self.evaluate(batch)
        return np.isfinite(values) & (values < 0) & ~self.is_excluded(batch)


@dataclass(frozen=True)
class HessianData:
    point: RealPoint
    unit_gradient: np.ndarray
    hessian: np.ndarray
    raw_hessian: np.ndarray
    gradient_norm: float


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based Philox generator keyed by (seed, stream)."""
    entropy = [int(seed) % (2 ** 64), int(stream)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def as_point_array(samples, n: Optional[int] = None) -> np.ndarray:
    """Accept a list of RealPoint or an (N, 2n) array and return the array."""
    if isinstance(samples, np.ndarray):
        arr = np.atleast_2d(samples.astype(float))
    else:
        samples = list(samples)
        if not samples:
            return np.zeros((0, 2 * n if n else 0))
        arr = np.array([s.coords if isinstance(s, RealPoint) else s for s in samples], dtype=float)
    if n is not None and arr.size and arr.shape[1] != 2 * n:
        raise ShapeMismatch(f"Samples have {arr.shape[1]} coordinates, expected {2 * n}")
    return arr


def _as_vector(p: Union[RealPoint, Sequence[float], np.ndarray]) -> np.ndarray:
    if isinstance(p, RealPoint):
        return p.as_array()
    return np.asarray(p, dtype=float).ravel()


def _scale(x: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(x)))


def gradient(
    domain: DomainSpec,
    p: Union[RealPoint, np.ndarray],
    analytic: bool = False,
    step: float = GRAD_STEP,
) -> np.ndarray:
    """
    Central-difference gradient of rho at p.

    Args:
        domain: the domain whose defining function is differentiated
        p: evaluation point
        analytic: use the catalog's closed-form gradient when it has one
        step: relative step, h = step * max(1, |p|)

    Returns:
        2n real vector
    """
    x = _as_vector(p)
    if analytic and domain.analytic_gradient is not None:
        return np.asarray(domain.analytic_gradient(x), dtype=float)

    h = step * _scale(x)
    eye = np.eye(x.size) * h
    stencil = np.vstack([x + eye, x - eye])
    values = domain.evaluate(stencil)
    if not np.all(np.isfinite(values)):
        raise NonFinite(f"{domain.name}: rho is not finite on the gradient stencil at {x.tolist()}")
    return (values[: x.size] - values[x.size:]) / (2.0 * h)


def _finite_difference_hessian(domain: DomainSpec, x: np.ndarray, step: float) -> np.ndarray:
    d = x.size
    h = step * _scale(x)
    eye = np.eye(d) * h

    points = [x]
    points.extend(x + eye[i] for i in range(d))
    points.extend(x - eye[i] for i in range(d))
    pairs = list(itertools.combinations(range(d), 2))
    for i, j in pairs:
        points.extend([
            x + eye[i] + eye[j],
            x + eye[i] - eye[j],
            x - eye[i] + eye[j],
            x - eye[i] - eye[j],
        ])
    values = domain.evaluate(np.array(points))
    if not np.all(np.isfinite(values)):
        raise NonFinite(f"{domain.name}: rho is not finite on the Hessian stencil at {x.tolist()}")

    f0 = values[0]
    plus = values[1:1 + d]
    minus = values[1 + d:1 + 2 * d]
    hess = np.zeros((d, d))
    hess[np.diag_indices(d)] = (plus - 2.0 * f0 + minus) / (h * h)
    cross = values[1 + 2 * d:].reshape(-1, 4)
    for (i, j), (fpp, fpm, fmp, fmm) in zip(pairs, cross):
        hess[i, j] = hess[j, i] = (fpp - fpm - fmp + fmm) / (4.0 * h * h)
    return hess


def hessian_at_boundary(
    domain: DomainSpec,
    p: Union[RealPoint, np.ndarray],
    analytic: bool = False,
    step: float = HESS_STEP,
    boundary_tol: float = BOUNDARY_TOL,
) -> HessianData:
    """
    Hessian of rho / |grad rho(p)| at a boundary point, symmetrized.

    The raw (unnormalized) Hessian and the gradient norm are kept as well,
    since the catalog's closed forms are stated for the raw defining function.
    """
    point = p if isinstance(p, RealPoint) else RealPoint.from_array(p)
    x = point.as_array()

    value = domain.evaluate(x)
    if not math.isfinite(value) or abs(value) > boundary_tol:
        raise NotOnBoundary(f"{domain.name}: |rho(p)| = {abs(value):.3e} exceeds {boundary_tol:g}")

    grad = gradient(domain, x, analytic=analytic)
    grad_norm = float(np.linalg.norm(grad))
    if grad_norm <= GRADIENT_FLOOR:
        raise DegenerateGradient(f"{domain.name}: |grad rho| = {grad_norm:.3e} at {x.tolist()}")

    if analytic and domain.analytic_hessian is not None:
        raw = np.asarray(domain.analytic_hessian(x), dtype=float)
    else:
        raw = _finite_difference_hessian(domain, x, step)
    raw = 0.5 * (raw + raw.T)

    return HessianData(
        point=point,
        unit_gradient=grad / grad_norm,
        hessian=raw / grad_norm,
        raw_hessian=raw,
        gradient_norm=grad_norm,
    )


def _check_symmetric(m, tol: float) -> np.ndarray:
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"Expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("Matrix has non-finite entries")
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > tol:
        raise NotSymmetric(f"Matrix asymmetry {asym:.3e} exceeds {tol:g}")
    return 0.5 * (a + a.T)


def jacobi_eigenvalues(m, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending."""
    a = _check_symmetric(m, tol)
    size = a.shape[0]
    if size == 0:
        return np.zeros(0)
    scale = max(float(np.linalg.norm(a)), np.finfo(float).tiny)

    for _ in range(MAX_JACOBI_SWEEPS):
        off = math.sqrt(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)))
        if off <= 1e-15 * scale:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q

    return np.sort(np.diag(a))


def max_eigenvalue_symmetric(m, tol: float = SYMMETRY_TOL) -> float:
    """Largest eigenvalue of a symmetric real matrix."""
    eigenvalues = jacobi_eigenvalues(m, tol)
    if eigenvalues.size == 0:
        raise ShapeMismatch("Empty matrix has no eigenvalues")
    return float(eigenvalues[-1])


def tangent_basis(unit_normal: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the complement of unit_normal, via a Householder reflection."""
    nu = np.asarray(unit_normal, dtype=float)
    d = nu.size
    v = nu.copy()
    v[0] += 1.0 if nu[0] >= 0 else -1.0
    reflector = np.eye(d) - 2.0 * np.outer(v, v) / float(v @ v)
    return reflector[:, 1:]


def givens_orthogonal(dim: int, rng: np.random.Generator, rotations: Optional[int] = None) -> np.ndarray:
    """Random orthogonal matrix as a product of Givens rotations."""
    q = np.eye(dim)
    if dim < 2:
        return q
    count = rotations if rotations is not None else 3 * dim * dim
    for _ in range(count):
        i, j = rng.choice(dim, size=2, replace=False)
        angle = rng.uniform(0.0, 2.0 * math.pi)
        c, s = math.cos(angle), math.sin(angle)
        row_i = q[i, :].copy()
        row_j = q[j, :].copy()
        q[i, :] = c * row_i - s * row_j
        q[j, :] = s * row_i + c * row_j
    return q


def rigid_motion(domain: DomainSpec, rotation: np.ndarray, shift: np.ndarray) -> DomainSpec:
    """The image of domain under x -> rotation @ x + shift."""
    q = np.asarray(rotation, dtype=float)
    t = np.asarray(shift, dtype=float)

    def pull_back(x):
        return (np.atleast_2d(x) - t) @ q

    lo, hi = domain.bbox
    corners = np.array(list(itertools.product(*zip(lo, hi))), dtype=float)
    moved = corners @ q.T + t
    excluded = None
    if domain.excluded_set is not None:
        excluded = lambda x: domain.excluded_set(pull_back(x))
    excluded_points = None
    if domain.excluded_points is not None:
        excluded_points = lambda count: np.atleast_2d(domain.excluded_points(count)) @ q.T + t
    boundary_sampler = None
    if domain.boundary_sampler is not None:
        boundary_sampler = lambda rng, count: tuple(
            np.atleast_2d(part) @ q.T + t for part in domain.boundary_sampler(rng, count)
        )

    return replace(
        domain,
        name=f"{domain.name}+rigid",
        rho=lambda x: domain.rho(pull_back(x)),
        bbox=(moved.min(axis=0), moved.max(axis=0)),
        excluded_set=excluded,
        excluded_points=excluded_points,
        boundary_sampler=boundary_sampler,
        analytic_gradient=None,
        analytic_hessian=None,
        metadata={**domain.metadata, "rigid_motion": True},
    )


def scaled_defining_function(domain: DomainSpec, factor: float) -> DomainSpec:
    """Same domain, defining function multiplied by a positive constant."""
    if factor <= 0:
        raise OutOfRange(f"Scale factor must be positive, got {factor}")
    return replace(
        domain,
        name=f"{domain.name}*{factor:g}",
        rho=lambda x: factor * domain.rho(x),
        analytic_gradient=None,
        analytic_hessian=None,
    )


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def parallel_map(func: Callable, items: Sequence) -> List:
    """Order-preserving map over a thread pool capped by SQUEEZE_LAB_THREADS."""
    items = list(items)
    workers = min(worker_count(), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


class BoundarySampler:
    """
    Seeded boundary sampler: random segments from interior anchors to the
    bounding box are sign-bracketed and bisected onto {rho = 0}.

    Keeps the inner bracket ends as near-boundary interior samples.
    """

    def __init__(self, domain: DomainSpec, seed: int = 42, logger=None, verbose: bool = False):
        self.domain = domain
        self.seed = seed
        self.logger = logger
        self.verbose = verbose
        self.processing_log = []
        self.boundary = np.zeros((0, domain.dim))
        self.interior = np.zeros((0, domain.dim))
        self.anchors = np.zeros((0, domain.dim))

    def sample(self, count: int, tolerance: float = SAMPLE_TOL,
               max_rounds: int = MAX_SAMPLING_ROUNDS) -> np.ndarray:
        """Draw `count` boundary points; fills self.interior and self.anchors too."""
        if count < 1:
            raise OutOfRange(f"Sample count must be at least 1, got {count}")

        domain = self.domain
        lo, hi = (np.asarray(b, dtype=float) for b in domain.bbox)
        rng = make_rng(self.seed, STREAM_BOUNDARY)
        self._log(f"🎯 Sampling {count} boundary points of {domain.name} (seed {self.seed})")

        if domain.boundary_sampler is not None:
            return self._sample_parametrized(count, tolerance, max_rounds, rng)

        boundary, interior, anchors = [], [], []
        found = 0
        # kept points per drawn candidate, refreshed every round
        yield_rate = 0.125
        for round_index in range(max_rounds):
            need = count - found
            batch = int(min(max(1.25 * need / max(yield_rate, MIN_SAMPLING_YIELD), 256), MAX_SAMPLING_BATCH))
            candidates = rng.uniform(lo, hi, size=(batch, domain.dim))
            directions = rng.normal(size=(batch, domain.dim))

            inside = domain.contains(candidates)
            if not np.any(inside):
                self._log(f"⚠️ Round {round_index}: no interior anchors in {batch} draws")
                yield_rate = MIN_SAMPLING_YIELD
                continue
            start = candidates[inside]
            directions = directions[inside]
            directions /= np.linalg.norm(directions, axis=1, keepdims=True)
            anchors.append(start)

            end = start + self._exit_length(start, directions, lo, hi)[:, None] * directions
            end_values = domain.evaluate(end)
            crosses = ~(np.isfinite(end_values) & (end_values < 0))
            if not np.any(crosses):
                yield_rate = MIN_SAMPLING_YIELD
                continue
            a, b = self._bisect(start[crosses], end[crosses])

            values_a = domain.evaluate(a)
            values_b = domain.evaluate(b)
            values_b = np.where(np.isfinite(values_b), values_b, np.inf)
            pick_b = np.abs(values_b) < np.abs(values_a)
            points = np.where(pick_b[:, None], b, a)
            values = np.where(pick_b, values_b, values_a)
            keep = np.isfinite(values) & (np.abs(values) < tolerance) & ~domain.is_excluded(points)
            # brackets that close on a jump of rho (not a zero) are dropped here
            yield_rate = max(int(np.sum(keep)) / batch, MIN_SAMPLING_YIELD)

            points, inner = points[keep][:need], a[keep][:need]
            boundary.append(points)
            interior.append(inner)
            found += len(points)
            if found >= count:
                break

        return self._finish(boundary, interior, anchors, found, count, max_rounds)

    def _sample_parametrized(self, count: int, tolerance: float, max_rounds: int,
                             rng: np.random.Generator) -> np.ndarray:
        """Boundary points from domain.boundary_sampler, still screened by |rho| < tolerance."""
        domain = self.domain
        boundary, interior, anchors = [], [], []
        found = 0
        for _ in range(max_rounds):
            need = count - found
            points, inner, deep = (np.atleast_2d(np.asarray(part, dtype=float))
                                   for part in domain.boundary_sampler(rng, need))
            values = domain.evaluate(points)
            keep = np.isfinite(values) & (np.abs(values) < tolerance) & ~domain.is_excluded(points)
            anchors.append(deep[domain.contains(deep)])
            boundary.append(points[keep][:need])
            interior.append(inner[keep][:need])
            found += len(boundary[-1])
            if found >= count:
                break
        return self._finish(boundary, interior, anchors, found, count, max_rounds)

    def _finish(self, boundary: List[np.ndarray], interior: List[np.ndarray], anchors: List[np.ndarray],
                found: int, count: int, max_rounds: int) -> np.ndarray:
        if found < count:
            self._log(f"❌ Only {found}/{count} boundary points after {max_rounds} rounds")
            raise NoBoundaryFound(
                f"{self.domain.name}: located {found} of {count} boundary points after {max_rounds} rounds"
            )

        self.boundary = np.vstack(boundary)
        self.interior = np.vstack(interior)
        self.anchors = np.vstack(anchors)
        self._log(f"✅ {found} boundary points, {len(self.anchors)} interior anchors")
        return self.boundary

    def _bisect(self, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        # a inside, b outside (non-finite counts as outside)
        a, b = a.copy(), b.copy()
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (a + b)
            inside = self.domain.contains(mid)
            a = np.where(inside[:, None], mid, a)
            b = np.where(inside[:, None], b, mid)
        return a, b

    @staticmethod
    def _exit_length(start: np.ndarray, directions: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            to_hi = np.where(directions > 0, (hi - start) / directions, np.inf)
            to_lo = np.where(directions < 0, (lo - start) / directions, np.inf)
        return np.minimum(to_hi, to_lo).min(axis=1)

    def sample_near(self, center: np.ndarray, radius: float, count: int,
                    tolerance: float = SAMPLE_TOL, seed_offset: int = 0) -> np.ndarray:
        """
        Boundary points within `radius` of a boundary point `center`, found by
        bisecting along the normal at center through random tangential offsets.
        """
        domain = self.domain
        center = np.asarray(center, dtype=float)
        nu = gradient(domain, center)
        nu = nu / np.linalg.norm(nu)
        basis = tangent_basis(nu)
        rng = make_rng(self.seed + seed_offset, STREAM_RING)

        collected = []
        found = 0
        for _ in range(MAX_SAMPLING_ROUNDS):
            batch = max(4 * (count - found), 64)
            direction = rng.normal(size=(batch, basis.shape[1]))
            direction /= np.linalg.norm(direction, axis=1, keepdims=True)
            # uniform in the (2n-1)-ball of the tangent plane
            lengths = radius * rng.uniform(size=batch) ** (1.0 / basis.shape[1])
            offsets = center + (direction * lengths[:, None]) @ basis.T
            reach = 2.0 * radius + 1e-6
            inner = offsets - reach * nu
            outer = offsets + reach * nu
            usable = domain.contains(inner) & ~domain.contains(outer)
            if not np.any(usable):
                continue
            a, b = self._bisect(inner[usable], outer[usable])
            values = domain.evaluate(a)
            points = a
            keep = (np.isfinite(values) & (np.abs(values) < tolerance)
                    & (np.linalg.norm(points - center, axis=1) <= radius)
                    & ~domain.is_excluded(points))
            kept = points[keep][: count - found]
            collected.append(kept)
            found += len(kept)
            if found >= count:
                break

        if not collected or found == 0:
            raise NoBoundaryFound(f"{domain.name}: no boundary points within {radius:g} of the base point")
        self._log(f"📊 Ring radius {radius:g}: {found} boundary points")
        return np.vstack(collected)

    def _log(self, message: str):
        """Add to processing log, forwarding to an owning analyzer when present."""
        if self.logger is not None and hasattr(self.logger, "_log"):
            self.logger._log(message)
            return
        timestamp = datetime.now().strftime("%H:%M:%S")
        log_entry = f"[{timestamp}] {message}"
        self.processing_log.append(log_entry)
        if self.verbose:
            print(log_entry)


def sample_boundary(domain: DomainSpec, count: int, seed: int = 42) -> List[RealPoint]:
    """Seeded boundary points with |rho| < 1e-8, excluded set rejected."""
    points = BoundarySampler(domain, seed).sample(count)
    return [RealPoint.from_array(row) for row in points]


def sample_interior(domain: DomainSpec, count: int, seed: int = 42,
                    near_boundary: bool = True) -> List[RealPoint]:
    """
    Interior samples: inner bisection ends (near the boundary) or the
    uniform anchors drawn from the bounding box.
    """
    sampler = BoundarySampler(domain, seed)
    sampler.sample(count)
    source = sampler.interior if near_boundary else sampler.anchors[:count]
    return [RealPoint.from_array(row) for row in source]


def interior_distance_to_boundary(domain: DomainSpec, z, samples) -> float:
    """
    Distance from an interior point to the sampled boundary cloud.

    An upper bound on the true boundary distance; it decreases towards it
    as the sample count grows (non-smooth corners included).
    """
    x = _as_vector(z)
    if not bool(domain.contains(x)[0]):
        raise OutsideDomain(f"{domain.name}: point {x.tolist()} is not in the domain")
    cloud = as_point_array(samples, domain.n)
    if cloud.size == 0:
        raise EmptySamples("No boundary samples supplied")
    return float(np.min(np.linalg.norm(cloud - x, axis=1)))
