#!/usr/bin/env python3
"""
Embedding Verifier - witness lower bounds s_D(p) >= s_D(p, f)

For an explicit embedding f: D -> B^n with f(p) = 0, s_D(p, f) is the radius
of the largest ball about 0 inside f(D). When f extends continuously to the
boundary that radius is the distance from 0 to f(effective boundary), where
punctures and removed analytic sets count as boundary. Without a boundary
extension the radius is estimated by covering a grid with the sampled image
and the result is labeled heuristic.
"""

import math
from dataclasses import dataclass
from datetime import datetime
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from domains_catalog import (
    ball_domain,
    float_option,
    hartogs_triangle,
    parse_options,
    polydisc_domain,
    punctured_disc_domain,
)
from geometry_core import (
    STREAM_TARGETS,
    BoundarySampler,
    DomainSpec,
    RealPoint,
    SAMPLE_TOL,
    as_point_array,
    make_rng,
    parallel_map,
)
from squeeze_bounds import Provenance, SqueezeBound
from squeeze_errors import (
    BadParams,
    BasepointNotMappedToZero,
    EmptySamples,
    ImageEscapesBall,
    OutOfRange,
    SqueezeLabError,
    UnknownDomain,
)

BASEPOINT_TOL = 1e-10
ESCAPE_TOL = 1e-9
BOUNDARY_ESCAPE_TOL = 1e-6
COVERING_TOL = 0.05
NEWTON_STARTS = 32
NEWTON_ITERATIONS = 60
NEWTON_BACKTRACKS = 30
RESIDUAL_TOL = 1e-8
JACOBIAN_STEP = 1e-7
RADIAL_LEVELS = 4
COVERING_TARGETS = 4000


@dataclass(frozen=True)
class EmbeddingSpec:
    """
    f: D -> B^n acting on batches (N, 2n) -> (N, 2n).

    Holomorphy and injectivity are trusted, not verified.
    """

    name: str
    map: Callable[[np.ndarray], np.ndarray]
    domain: DomainSpec
    basepoint: RealPoint
    boundary_extension: bool = True

    def apply(self, x) -> np.ndarray:
        batch = np.atleast_2d(np.asarray(x, dtype=float))
        if batch.shape[0] == 0:
            return np.zeros((0, self.domain.dim))
        with np.errstate(all="ignore"):
            return np.asarray(self.map(batch), dtype=float).reshape(len(batch), -1)

    def apply_one(self, x: np.ndarray) -> np.ndarray:
        return self.apply(x[None, :])[0]


@dataclass
class InclusionReport:
    """One-sided check of B(0, r) inside f(D)."""

    radius: float
    included: bool
    certified: bool
    targets: int
    solved: int
    max_residual: float
    counterexample: Optional[Tuple[float, ...]] = None
    reason: str = ""

    @property
    def tag(self) -> str:
        return Provenance.EMBEDDING_WITNESS.value if self.certified else "Heuristic"

    def to_dict(self) -> Dict:
        return {
            "radius": self.radius,
            "included": self.included,
            "certified": self.certified,
            "targets": self.targets,
            "solved": self.solved,
            "max_residual": self.max_residual,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
            "reason": self.reason,
            "provenance": self.tag,
        }


def _complex(x: np.ndarray) -> np.ndarray:
    return x[:, 0::2] + 1j * x[:, 1::2]


def _real(z: np.ndarray) -> np.ndarray:
    out = np.empty((z.shape[0], 2 * z.shape[1]))
    out[:, 0::2], out[:, 1::2] = z.real, z.imag
    return out


def _moebius(a: complex, w: np.ndarray) -> np.ndarray:
    return (w - a) / (1.0 - np.conj(a) * w)


# ---------------------------------------------------------------------------
# Cataloged embeddings

def identity_embedding(n: int = 2) -> EmbeddingSpec:
    return EmbeddingSpec(
        name=f"identity:n={n}",
        map=lambda x: x.copy(),
        domain=ball_domain(n),
        basepoint=RealPoint((0.0,) * (2 * n), n),
    )


def moebius_embedding(a: float = 0.5) -> EmbeddingSpec:
    """w -> (w - a)/(1 - a w) on the punctured disc, basepoint a; the puncture lands on -a."""
    if not (0.0 < a < 1.0):
        raise BadParams(f"moebius needs 0 < a < 1, got {a}")
    return EmbeddingSpec(
        name=f"moebius:a={a:g}",
        map=lambda x: _real(_moebius(a, _complex(x))),
        domain=punctured_disc_domain(),
        basepoint=RealPoint((a, 0.0), 1),
    )


def bidisc_scaled_embedding() -> EmbeddingSpec:
    """z -> z / sqrt(2), the bidisc into B^2."""
    return EmbeddingSpec(
        name="bidisc-scaled",
        map=lambda x: x / math.sqrt(2.0),
        domain=polydisc_domain(2),
        basepoint=RealPoint((0.0,) * 4, 2),
    )


def triangle_product_embedding(b1: float = 0.5, b2: float = 0.25) -> EmbeddingSpec:
    """
    Hartogs triangle -> punctured bidisc -> B^2: (z1, z2/z1), Moebius in each
    factor centering the basepoint image, then scaling by 1/sqrt(2).
    """
    if not (0.0 < b2 < b1 < 1.0):
        raise BadParams(f"triangle-product-scaled needs 0 < b2 < b1 < 1, got b1={b1}, b2={b2}")
    a1, a2 = b1, b2 / b1

    def apply(x):
        z = _complex(x)
        w2 = z[:, 1] / z[:, 0]
        image = np.stack([_moebius(a1, z[:, 0]), _moebius(a2, w2)], axis=1) / math.sqrt(2.0)
        return _real(image)

    return EmbeddingSpec(
        name=f"triangle-product-scaled:b1={b1:g}:b2={b2:g}",
        map=apply,
        domain=hartogs_triangle(),
        basepoint=RealPoint((b1, 0.0, b2, 0.0), 2),
    )


EMBEDDINGS: Dict[str, Tuple[Callable, str]] = {
    "identity": (lambda o, i: identity_embedding(int(float_option(o, "n", 2, i))),
                 "identity:n=2 - B^n into itself, basepoint 0"),
    "moebius": (lambda o, i: moebius_embedding(float_option(o, "a", 0.5, i)),
                "moebius:a=0.5 - punctured disc into the disc, basepoint a"),
    "bidisc-scaled": (lambda o, i: bidisc_scaled_embedding(), "bidisc-scaled - z/sqrt(2), basepoint 0"),
    "triangle-product-scaled": (
        lambda o, i: triangle_product_embedding(float_option(o, "b1", 0.5, i), float_option(o, "b2", 0.25, i)),
        "triangle-product-scaled:b1=0.5:b2=0.25 - Hartogs triangle through the punctured bidisc",
    ),
}


def embedding_lookup(identifier: str) -> EmbeddingSpec:
    tokens = identifier.strip().split(":")
    name = tokens[0].lower()
    if name not in EMBEDDINGS:
        raise UnknownDomain(f"Unknown embedding {identifier!r}; known: {', '.join(sorted(EMBEDDINGS))}",
                            hint="Run the catalog command for the embedding list.")
    _, options = parse_options(tokens[1:], identifier)
    builder, _ = EMBEDDINGS[name]
    try:
        return builder(options, identifier)
    except SqueezeLabError:
        raise
    except (TypeError, ValueError) as e:
        raise BadParams(f"{identifier}: {e}")


# ---------------------------------------------------------------------------
# Checks

def check_basepoint(spec: EmbeddingSpec):
    image = spec.apply_one(spec.basepoint.as_array())
    size = float(np.linalg.norm(image))
    if not (size < BASEPOINT_TOL):
        raise BasepointNotMappedToZero(f"{spec.name}: |f(p)| = {size:.3e}")


def check_images_in_ball(spec: EmbeddingSpec, images: np.ndarray, tolerance: float = ESCAPE_TOL):
    norms = np.linalg.norm(images, axis=1)
    finite = np.isfinite(norms)
    if np.any(norms[finite] >= 1.0 + tolerance):
        worst = float(np.max(norms[finite]))
        raise ImageEscapesBall(f"{spec.name}: a sample maps to |f| = {worst:.6g} >= 1")


def effective_boundary(spec: EmbeddingSpec, boundary_samples) -> np.ndarray:
    """Boundary samples plus representative points of the excluded set."""
    cloud = as_point_array(boundary_samples, spec.domain.n)
    if spec.domain.excluded_points is not None:
        removed = np.atleast_2d(spec.domain.excluded_points(max(len(cloud), 1)))
        cloud = np.vstack([cloud, removed]) if cloud.size else removed
    return cloud


def _covering_radius(spec: EmbeddingSpec, images: np.ndarray, seed: int, tolerance: float) -> float:
    rng = make_rng(seed, STREAM_TARGETS)
    dim = spec.domain.dim
    directions = rng.normal(size=(COVERING_TARGETS, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    targets = directions * (rng.uniform(size=COVERING_TARGETS) ** (1.0 / dim))[:, None]

    uncovered = []
    for start in range(0, len(targets), 256):
        block = targets[start:start + 256]
        nearest = np.min(np.linalg.norm(block[:, None, :] - images[None, :, :], axis=-1), axis=1)
        uncovered.extend(np.linalg.norm(block[nearest > tolerance], axis=1).tolist())
    return min(uncovered) if uncovered else 1.0


def witness_radius(spec: EmbeddingSpec, boundary_samples, interior_samples,
                   covering_tolerance: float = COVERING_TOL, seed: int = 42) -> SqueezeBound:
    """
    Witness lower bound on s_D(p) from the embedding.

    Args:
        spec: embedding with f(p) = 0
        boundary_samples: sampled boundary of D
        interior_samples: sampled interior of D
        covering_tolerance: grid covering distance for the heuristic mode

    Returns:
        SqueezeBound tagged EmbeddingWitness (Heuristic without boundary extension)
    """
    check_basepoint(spec)
    interior = as_point_array(interior_samples, spec.domain.n)
    if interior.size == 0:
        raise EmptySamples("witness_radius needs interior samples")
    interior_images = spec.apply(interior)
    check_images_in_ball(spec, interior_images)

    if spec.boundary_extension:
        images = spec.apply(effective_boundary(spec, boundary_samples))
        check_images_in_ball(spec, images, BOUNDARY_ESCAPE_TOL)
        norms = np.linalg.norm(images, axis=1)
        norms = norms[np.isfinite(norms)]
        if norms.size == 0:
            raise EmptySamples(f"{spec.name}: no finite boundary images")
        value = float(np.min(norms))
        # boundary samples sit within SAMPLE_TOL of rho = 0
        if value > 1.0 - 10.0 * SAMPLE_TOL:
            value = 1.0
        return SqueezeBound(min(value, 1.0), 1.0, Provenance.EMBEDDING_WITNESS,
                            note=f"min |f| over {len(images)} effective boundary points")

    finite = interior_images[np.all(np.isfinite(interior_images), axis=1)]
    value = _covering_radius(spec, finite, seed, covering_tolerance)
    return SqueezeBound(min(value, 1.0), 1.0, Provenance.EMBEDDING_WITNESS, heuristic=True,
                        note=f"covering tolerance {covering_tolerance:g}")


def inclusion_targets(dim: int, radius: float, grid: int, seed: int) -> np.ndarray:
    """Seeded directions at RADIAL_LEVELS radial fractions of `radius`, plus the origin."""
    rng = make_rng(seed, STREAM_TARGETS)
    directions = rng.normal(size=(grid, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    levels = radius * np.arange(1, RADIAL_LEVELS + 1) / RADIAL_LEVELS
    # the outermost level stays inside the open ball
    levels[-1] = radius * (1.0 - 1e-9)
    rings = [directions * level for level in levels]
    return np.vstack([np.zeros((1, dim))] + rings)


def _jacobian(spec: EmbeddingSpec, z: np.ndarray) -> np.ndarray:
    dim = len(z)
    h = JACOBIAN_STEP * max(1.0, float(np.linalg.norm(z)))
    shifts = np.eye(dim) * h
    images = spec.apply(np.vstack([z + shifts, z - shifts]))
    return ((images[:dim] - images[dim:]) / (2.0 * h)).T


def newton_preimage(spec: EmbeddingSpec, target: np.ndarray, start: np.ndarray) -> Tuple[np.ndarray, float]:
    """Damped Newton on |f(z) - target|^2, staying inside D."""
    z = start.copy()
    residual = spec.apply_one(z) - target
    norm = float(np.linalg.norm(residual))
    for _ in range(NEWTON_ITERATIONS):
        if norm <= RESIDUAL_TOL or not math.isfinite(norm):
            break
        jac = _jacobian(spec, z)
        if not np.all(np.isfinite(jac)):
            break
        step = np.linalg.lstsq(jac, -residual, rcond=None)[0]
        scale = 1.0
        improved = False
        for _ in range(NEWTON_BACKTRACKS):
            trial = z + scale * step
            if bool(spec.domain.contains(trial)[0]):
                trial_residual = spec.apply_one(trial) - target
                trial_norm = float(np.linalg.norm(trial_residual))
                if trial_norm < norm:
                    z, residual, norm, improved = trial, trial_residual, trial_norm, True
                    break
            scale *= 0.5
        if not improved:
            break
    return z, norm


class EmbeddingVerifier:
    """
    Samples the domain of an embedding once, then evaluates witness radii and
    inclusion checks B(0, r) in f(D).
    """

    def __init__(self, spec: EmbeddingSpec, samples: int = 20_000, seed: int = 42,
                 verbose: bool = False):
        self.spec = spec
        self.samples = samples
        self.seed = seed
        self.verbose = verbose
        self.processing_log = []
        self.sampler = BoundarySampler(spec.domain, seed, logger=self)
        self._interior = None

    def _ensure_samples(self):
        if self._interior is None:
            self.sampler.sample(self.samples)
            self._interior = np.vstack([self.sampler.interior, self.sampler.anchors])

    @property
    def interior(self) -> np.ndarray:
        self._ensure_samples()
        return self._interior

    @property
    def boundary(self) -> np.ndarray:
        self._ensure_samples()
        return self.sampler.boundary

    def witness(self, covering_tolerance: float = COVERING_TOL) -> SqueezeBound:
        self._log(f"🎯 Witness radius for {self.spec.name}")
        bound = witness_radius(self.spec, self.boundary, self.interior, covering_tolerance, self.seed)
        self._log(f"📊 s_D(p, f) >= {bound.lower:.6f} [{bound.tag}]")
        return bound

    def verify(self, radius: float, grid: int = 64) -> InclusionReport:
        """
        True when every grid target in B(0, r) has a preimage within 1e-8.

        An effective-boundary image inside B(0, r) is a certified exclusion;
        Newton stalling on every start only gives a heuristic exclusion.
        """
        if not (0.0 < radius < 1.0):
            raise OutOfRange(f"verify_inclusion needs 0 < r < 1, got {radius}")
        if grid < 1:
            raise OutOfRange(f"Grid must have at least one direction, got {grid}")
        spec = self.spec
        check_basepoint(spec)
        self._log(f"🔄 Checking B(0, {radius:g}) inside f({spec.domain.name})")

        boundary_images = spec.apply(effective_boundary(spec, self.boundary))
        norms = np.linalg.norm(boundary_images, axis=1)
        inside = np.isfinite(norms) & (norms < radius)
        if spec.boundary_extension and np.any(inside):
            hit = int(np.argmin(np.where(inside, norms, np.inf)))
            witness = tuple(float(v) for v in boundary_images[hit])
            self._log(f"❌ Boundary image {witness} lies inside the ball")
            return InclusionReport(radius, False, True, 0, 0, math.nan, witness,
                                   reason="image of the effective boundary inside B(0, r)")

        interior = self.interior
        images = spec.apply(interior)
        finite = np.all(np.isfinite(images), axis=1)
        interior, images = interior[finite], images[finite]
        check_images_in_ball(spec, images)
        targets = inclusion_targets(spec.domain.dim, radius, grid, self.seed)

        def solve(target):
            nearest = np.argsort(np.linalg.norm(images - target, axis=1))[:NEWTON_STARTS]
            best = math.inf
            for index in nearest:
                _, residual = newton_preimage(spec, target, interior[index])
                best = min(best, residual)
                if best <= RESIDUAL_TOL:
                    break
            return best

        residuals = parallel_map(solve, list(targets))
        solved = sum(1 for r in residuals if r <= RESIDUAL_TOL)
        worst = int(np.argmax(residuals))
        max_residual = float(residuals[worst])
        if solved == len(targets):
            self._log(f"✅ All {solved} targets have preimages (max residual {max_residual:.2e})")
            return InclusionReport(radius, True, spec.boundary_extension, len(targets), solved, max_residual)

        counterexample = tuple(float(v) for v in targets[worst])
        self._log(f"⚠️ {len(targets) - solved} targets without a preimage; worst residual {max_residual:.2e}")
        return InclusionReport(radius, False, False, len(targets), solved, max_residual, counterexample,
                               reason="Newton stalled on every start")

    def _log(self, message: str):
        """Add to processing log."""
        timestamp = datetime.now().strftime("%H:%M:%S")
        log_entry = f"[{timestamp}] {message}"
        self.processing_log.append(log_entry)
        if self.verbose:
            print(log_entry)


def verify_inclusion(spec: EmbeddingSpec, r: float, grid: int = 64, samples: int = 20_000,
                     seed: int = 42) -> InclusionReport:
    return EmbeddingVerifier(spec, samples=samples, seed=seed).verify(r, grid)


def witness_for(identifier: str, samples: int = 20_000, seed: int = 42) -> Tuple[SqueezeBound, List[str]]:
    """
    Convenience wrapper for cataloged embeddings.

    Returns:
        (SqueezeBound, processing_log)
    """
    verifier = EmbeddingVerifier(embedding_lookup(identifier), samples=samples, seed=seed)
    return verifier.witness(), verifier.processing_log
