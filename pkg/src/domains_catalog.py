#!/usr/bin/env python3
"""
Domain Catalog - concrete DomainSpec constructors

Covers the model domains (balls, discs, punctured discs, polydiscs,
ellipsoids), Thullen domains, the four Cartan-Hartogs families over
classical bounded symmetric domains, the Reinhardt domain
log^2|z1|^2 + log^2|z2|^2 < 1 with its shear, and the Hartogs triangle
with its biholomorphism onto the product of punctured discs.

Every constructor is addressable by a string identifier through
catalog_lookup(), e.g. "thullen:k=0.5" or "cartan-hartogs:I:1,2:k=0.5:m=1".
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from geometry_core import DomainSpec, RealPoint
from squeeze_bounds import exact_squeezing, product_lower_bound, ModelKind
from squeeze_errors import (
    BadParams,
    OutOfRange,
    OutsideDomain,
    ShapeMismatch,
    SqueezeLabError,
    SymmetryViolation,
    UnknownDomain,
)

BBOX_MARGIN = 1.05
SQRT_E = math.exp(0.5)
DEFAULT_SHEAR = 0.01
SYMMETRY_TOL = 1e-10
BASE_BISECTION_STEPS = 60
NEAR_BOUNDARY_SHRINK = 1e-9


def _complex(x: np.ndarray) -> np.ndarray:
    """(N, 2n) real batch -> (N, n) complex batch."""
    return x[:, 0::2] + 1j * x[:, 1::2]


def _box(half_widths: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    hi = BBOX_MARGIN * np.asarray(half_widths, dtype=float)
    return -hi, hi


# ---------------------------------------------------------------------------
# Model domains

def ball_domain(n: int = 1, radius: float = 1.0) -> DomainSpec:
    if n < 1 or radius <= 0:
        raise BadParams(f"ball needs n >= 1 and radius > 0, got n={n}, radius={radius}")

    def gradient(x):
        return 2.0 * x

    return DomainSpec(
        name=f"ball:n={n}:radius={radius:g}" if radius != 1.0 else f"ball:n={n}",
        n=n,
        rho=lambda x: np.sum(x * x, axis=1) - radius * radius,
        bbox=_box([radius] * 2 * n),
        analytic_gradient=gradient,
        analytic_hessian=lambda x: 2.0 * np.eye(2 * n),
        metadata={"boundary_point": (radius,) + (0.0,) * (2 * n - 1), "model": ModelKind.BALL,
                  "diameter": 2.0 * radius},
    )


def disc_domain() -> DomainSpec:
    domain = ball_domain(1)
    return replace(domain, name="disc", metadata={**domain.metadata, "model": ModelKind.DISC})


def punctured_disc_domain(c: float = 1.0) -> DomainSpec:
    """{0 < |z| < c}; the puncture is the excluded set."""
    if c <= 0:
        raise BadParams(f"punctured disc radius must be positive, got {c}")
    model = ModelKind.PUNCTURED_DISC if c == 1.0 else ModelKind.SCALED_PUNCTURED_DISC
    return DomainSpec(
        name="punctured-disc" if c == 1.0 else f"scaled-punctured-disc:c={c:g}",
        n=1,
        rho=lambda x: np.sum(x * x, axis=1) - c * c,
        bbox=_box([c, c]),
        excluded_set=lambda x: np.all(x == 0.0, axis=1),
        excluded_points=lambda count: np.zeros((1, 2)),
        analytic_gradient=lambda x: 2.0 * x,
        analytic_hessian=lambda x: 2.0 * np.eye(2),
        metadata={"boundary_point": (c, 0.0), "model": model, "scale": c},
    )


def polydisc_domain(n: int = 2) -> DomainSpec:
    if n < 1:
        raise BadParams(f"polydisc needs n >= 1, got {n}")

    def rho(x):
        z = _complex(x)
        return np.max(np.abs(z) ** 2, axis=1) - 1.0

    return DomainSpec(
        name="bidisc" if n == 2 else f"polydisc:n={n}",
        n=n,
        rho=rho,
        bbox=_box([1.0] * 2 * n),
        metadata={"boundary_point": (1.0,) + (0.0,) * (2 * n - 1), "diameter": 2.0 * math.sqrt(n)},
    )


def half_bidisc_domain() -> DomainSpec:
    """Bidisc cut by the real hyperplane x1 = 1/2; flat at (1/2, 0)."""

    def rho(x):
        z = _complex(x)
        return np.maximum(np.max(np.abs(z) ** 2 - 1.0, axis=1), x[:, 0] - 0.5)

    return DomainSpec(
        name="half-bidisc",
        n=2,
        rho=rho,
        bbox=_box([1.0] * 4),
        metadata={"boundary_point": (0.5, 0.0, 0.0, 0.0)},
    )


def half_space_cap_domain(n: int = 1) -> DomainSpec:
    """{x1 < 0} cut down to the unit box; rho = x1."""
    lo, hi = -np.ones(2 * n), np.ones(2 * n)
    return DomainSpec(
        name=f"half-space-cap:n={n}",
        n=n,
        rho=lambda x: x[:, 0].copy(),
        bbox=(lo, hi),
        analytic_gradient=lambda x: np.eye(2 * n)[0],
        analytic_hessian=lambda x: np.zeros((2 * n, 2 * n)),
        metadata={"boundary_point": (0.0,) * (2 * n)},
    )


def ellipsoid_domain(axes: Sequence[float]) -> DomainSpec:
    """Real ellipsoid sum (x_i / a_i)^2 < 1 in C^n = R^{2n}."""
    a = np.asarray(axes, dtype=float)
    if a.size % 2 or a.size == 0 or np.any(a <= 0):
        raise BadParams(f"ellipsoid needs an even number of positive semi-axes, got {list(axes)}")
    inverse_sq = 1.0 / (a * a)
    return DomainSpec(
        name="ellipsoid:a=" + ",".join(f"{v:g}" for v in a),
        n=a.size // 2,
        rho=lambda x: np.sum(x * x * inverse_sq, axis=1) - 1.0,
        bbox=_box(a),
        analytic_gradient=lambda x: 2.0 * x * inverse_sq,
        analytic_hessian=lambda x: np.diag(2.0 * inverse_sq),
        metadata={"boundary_point": (float(a[0]),) + (0.0,) * (a.size - 1), "axes": tuple(a.tolist())},
    )


def ellipsoid_vertex_pinching(axes: Sequence[float]) -> float:
    """Closed-form pinching radius of an ellipsoid at (a_1, 0, ..., 0)."""
    a = np.asarray(axes, dtype=float)
    others_sq = a[1:] ** 2
    inner = float(np.min(others_sq)) / a[0]
    enclosing = max(float(a[0]), float(np.max(others_sq)) / a[0])
    return inner / enclosing


# ---------------------------------------------------------------------------
# Thullen domains

def thullen_domain(k: float) -> DomainSpec:
    """
    D_k = {|z1|^{2k} + |z2|^2 < 1}, 0 < k < 1, with the defining function
    phi = |z1|^2 / (1 - |z2|^2)^{1/k} - 1 (nondegenerate at (1, 0)).
    """
    if not (0.0 < k < 1.0):
        raise OutOfRange(f"Thullen domains need 0 < k < 1, got k = {k}")
    alpha = 1.0 / k

    def rho(x):
        a = x[:, 0] ** 2 + x[:, 1] ** 2
        b = x[:, 2] ** 2 + x[:, 3] ** 2
        safe = np.where(b < 1.0, 1.0 - b, 1.0)
        return np.where(b < 1.0, a * safe ** (-alpha) - 1.0, a + b)

    def gradient(x):
        a = x[0] ** 2 + x[1] ** 2
        m = 1.0 - (x[2] ** 2 + x[3] ** 2)
        return np.array([
            2.0 * x[0] * m ** (-alpha),
            2.0 * x[1] * m ** (-alpha),
            2.0 * alpha * a * m ** (-alpha - 1.0) * x[2],
            2.0 * alpha * a * m ** (-alpha - 1.0) * x[3],
        ])

    def hessian(x):
        a = x[0] ** 2 + x[1] ** 2
        m = 1.0 - (x[2] ** 2 + x[3] ** 2)
        h = np.zeros((4, 4))
        h[0, 0] = h[1, 1] = 2.0 * m ** (-alpha)
        for i in (0, 1):
            for j in (2, 3):
                h[i, j] = h[j, i] = 4.0 * alpha * x[i] * x[j] * m ** (-alpha - 1.0)
        for i in (2, 3):
            for j in (2, 3):
                h[i, j] = 4.0 * alpha * (alpha + 1.0) * a * m ** (-alpha - 2.0) * x[i] * x[j]
            h[i, i] += 2.0 * alpha * a * m ** (-alpha - 1.0)
        return h

    return DomainSpec(
        name=f"thullen:k={k:g}",
        n=2,
        rho=rho,
        bbox=_box([1.0] * 4),
        analytic_gradient=gradient,
        analytic_hessian=hessian,
        metadata={"boundary_point": (1.0, 0.0, 0.0, 0.0), "k": k},
    )


# ---------------------------------------------------------------------------
# Cartan-Hartogs domains

BASE_TYPES = ("I", "II", "III", "IV")


@dataclass(frozen=True)
class CartanHartogsParams:
    """
    Omega_hat_k = {(Z, W) in Omega x C^m : ||W||^2 < N(Z, Z)^k}.

    size is (r, s) for type I, (p,) for II, (q,) for III and (n,) for IV.
    """

    base_type: str
    size: Tuple[int, ...]
    k: float = 1.0
    m: int = 1

    def __post_init__(self):
        size = tuple(int(v) for v in self.size)
        object.__setattr__(self, "size", size)
        if self.base_type not in BASE_TYPES:
            raise BadParams(f"Unknown base type {self.base_type!r}; expected one of {BASE_TYPES}")
        expected = 2 if self.base_type == "I" else 1
        if len(size) != expected or any(v < 1 for v in size):
            raise BadParams(f"Type {self.base_type} needs {expected} size parameter(s) >= 1, got {size}")
        if self.base_type == "I" and size[0] > size[1]:
            raise BadParams(f"Type I(r, s) requires r <= s, got {size}")
        if self.base_type == "III" and size[0] < 2:
            raise BadParams("Type III(q) requires q >= 2")
        if not (self.k > 0):
            raise BadParams(f"k must be positive, got {self.k}")
        if self.m < 1:
            raise BadParams(f"Fiber dimension m must be >= 1, got {self.m}")

    @property
    def dim_omega(self) -> int:
        if self.base_type == "I":
            return self.size[0] * self.size[1]
        if self.base_type == "II":
            p = self.size[0]
            return p * (p + 1) // 2
        if self.base_type == "III":
            q = self.size[0]
            return q * (q - 1) // 2
        return self.size[0]

    @property
    def n(self) -> int:
        return self.dim_omega + self.m

    @property
    def label(self) -> str:
        return f"{self.base_type}(" + ",".join(str(v) for v in self.size) + ")"


def _check_matrix(params: CartanHartogsParams, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if params.base_type == "IV":
        z = z.reshape(-1)
        if z.size != params.size[0]:
            raise ShapeMismatch(f"Type IV({params.size[0]}) needs a vector of length {params.size[0]}, got {z.size}")
        return z
    shape = params.size if params.base_type == "I" else (params.size[0], params.size[0])
    if z.ndim == 0:
        z = z.reshape(1, 1)
    if z.shape != shape:
        raise ShapeMismatch(f"Type {params.label} needs a {shape} matrix, got {z.shape}")
    if params.base_type == "II" and np.max(np.abs(z - z.T)) > SYMMETRY_TOL:
        raise SymmetryViolation("Type II matrices must be symmetric")
    if params.base_type == "III" and np.max(np.abs(z + z.T)) > SYMMETRY_TOL:
        raise SymmetryViolation("Type III matrices must be skew-symmetric")
    return z


def _generic_norm_batch(base_type: str, z: np.ndarray) -> np.ndarray:
    """N(Z, Z) for a stack of matrices (types I-III) or vectors (type IV)."""
    if base_type == "IV":
        bilinear = np.abs(np.sum(z * z, axis=-1)) ** 2
        hermitian = np.sum(np.abs(z) ** 2, axis=-1)
        return 1.0 + bilinear - 2.0 * hermitian
    gram = z @ np.conj(np.swapaxes(z, -1, -2))
    eye = np.eye(gram.shape[-1])
    return np.real(np.linalg.det(eye - gram))


def generic_norm(params: CartanHartogsParams, z) -> float:
    """
    Generic norm of the classical domain: det(I - Z Zbar^t) for types I-III
    (for skew Z this equals det(I + Z Zbar)) and 1 + |Z Z^t|^2 - 2 Z Zbar^t for IV.
    """
    z = _check_matrix(params, z)
    return float(_generic_norm_batch(params.base_type, z[None, ...])[0])


def _zeta_to_matrix(params: CartanHartogsParams, zeta: np.ndarray) -> np.ndarray:
    """
    Free complex coordinates -> matrix variable, row-major. Off-diagonal entries of
    types II/III and the type IV vector carry a 1/sqrt(2) so N = 1 - |zeta|^2 + O(|zeta|^4).
    """
    count = zeta.shape[0]
    base = params.base_type
    if base == "I":
        return zeta.reshape(count, *params.size)
    if base == "IV":
        return zeta / math.sqrt(2.0)
    size = params.size[0]
    z = np.zeros((count, size, size), dtype=complex)
    index = 0
    for j in range(size):
        start = j if base == "II" else j + 1
        for l in range(start, size):
            if j == l:
                z[:, j, j] = zeta[:, index]
            else:
                value = zeta[:, index] / math.sqrt(2.0)
                z[:, j, l] = value
                z[:, l, j] = value if base == "II" else -value
            index += 1
    return z


def _in_classical_domain(base_type: str, z: np.ndarray) -> np.ndarray:
    if base_type == "IV":
        bilinear = np.abs(np.sum(z * z, axis=-1))
        return (_generic_norm_batch(base_type, z) > 0) & (bilinear < 1.0)
    singular = np.linalg.svd(z, compute_uv=False)
    return np.max(singular, axis=-1) < 1.0


def _cartan_hartogs_sampler(params: CartanHartogsParams, zeta_bound: float) -> Callable:
    """
    Draw Z in Omega along random rays, then W = N(Z, Z)^{k/2} u with u on S^{2m-1}:
    (Z, W) lies on {X = 0} exactly. Across dOmega x {0} rho jumps from -1 to
    +1, so bisection from the bounding box cannot reach most of the boundary.
    """
    d, m, k = params.dim_omega, params.m, params.k
    reach = zeta_bound * math.sqrt(2 * d) + 1.0

    def in_base(zeta_real):
        z = _zeta_to_matrix(params, _complex(zeta_real))
        return _in_classical_domain(params.base_type, z) & (_generic_norm_batch(params.base_type, z) > 0)

    def draw(rng: np.random.Generator, count: int):
        direction = rng.normal(size=(count, 2 * d))
        direction /= np.linalg.norm(direction, axis=1, keepdims=True)
        # Omega is convex and balanced: bisect the exit radius along each ray
        inner, outer = np.zeros(count), np.full(count, reach)
        for _ in range(BASE_BISECTION_STEPS):
            mid = 0.5 * (inner + outer)
            inside = in_base(direction * mid[:, None])
            inner = np.where(inside, mid, inner)
            outer = np.where(inside, outer, mid)
        radius = inner * rng.uniform(size=count) ** (1.0 / (2 * d))
        zeta = direction * radius[:, None]
        norm = _generic_norm_batch(params.base_type, _zeta_to_matrix(params, _complex(zeta)))

        u = rng.normal(size=(count, 2 * m))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        w = u * np.clip(norm, 0.0, None)[:, None] ** (0.5 * k)
        shrink = rng.uniform(size=count) ** (1.0 / (2 * m))
        return (np.hstack([zeta, w]),
                np.hstack([zeta, (1.0 - NEAR_BOUNDARY_SHRINK) * w]),
                np.hstack([zeta, shrink[:, None] * w]))

    return draw


def cartan_hartogs_domain(params: CartanHartogsParams) -> DomainSpec:
    """rho = X(Z, W) = ||W||^2 / N(Z, Z)^k - 1 on Omega x C^m, and 1 + ||W||^2 off Omega."""
    d = params.dim_omega

    def rho(x):
        c = _complex(x)
        zeta, w = c[:, :d], c[:, d:]
        z = _zeta_to_matrix(params, zeta)
        norm = _generic_norm_batch(params.base_type, z)
        inside = _in_classical_domain(params.base_type, z) & (norm > 0)
        w_sq = np.sum(np.abs(w) ** 2, axis=1)
        safe = np.where(inside, norm, 1.0)
        return np.where(inside, w_sq * safe ** (-params.k) - 1.0, 1.0 + w_sq)

    zeta_bound = 1.0 if params.base_type == "I" else math.sqrt(2.0)
    half_widths = [zeta_bound] * (2 * d) + [1.0] * (2 * params.m)
    boundary_point = (0.0,) * (2 * params.n - 2) + (1.0, 0.0)

    analytic_gradient = analytic_hessian = None
    if params.base_type == "I" and params.size[0] == 1:
        analytic_gradient, analytic_hessian = _rank_one_derivatives(d, params.m, params.k)

    return DomainSpec(
        name=f"cartan-hartogs:{params.base_type}:" + ",".join(str(v) for v in params.size)
             + f":k={params.k:g}:m={params.m}",
        n=params.n,
        rho=rho,
        bbox=_box(half_widths),
        boundary_sampler=_cartan_hartogs_sampler(params, zeta_bound),
        analytic_gradient=analytic_gradient,
        analytic_hessian=analytic_hessian,
        metadata={"boundary_point": boundary_point, "params": params, "dim_omega": d},
    )


def _rank_one_derivatives(d: int, m: int, k: float) -> Tuple[Callable, Callable]:
    """Closed-form derivatives for type I(1, s), where N = 1 - |zeta|^2."""

    def split(x):
        zeta, w = x[: 2 * d], x[2 * d:]
        return zeta, w, 1.0 - float(zeta @ zeta), float(w @ w)

    def gradient(x):
        zeta, w, norm, w_sq = split(x)
        return np.concatenate([2.0 * k * w_sq * norm ** (-k - 1.0) * zeta, 2.0 * norm ** (-k) * w])

    def hessian(x):
        zeta, w, norm, w_sq = split(x)
        h = np.zeros((2 * (d + m), 2 * (d + m)))
        zz = 2.0 * k * w_sq * (norm ** (-k - 1.0) * np.eye(2 * d)
                               + 2.0 * (k + 1.0) * norm ** (-k - 2.0) * np.outer(zeta, zeta))
        zw = 4.0 * k * norm ** (-k - 1.0) * np.outer(zeta, w)
        h[: 2 * d, : 2 * d] = zz
        h[: 2 * d, 2 * d:] = zw
        h[2 * d:, : 2 * d] = zw.T
        h[2 * d:, 2 * d:] = 2.0 * norm ** (-k) * np.eye(2 * m)
        return h

    return gradient, hessian


def s_omega_constant(base_type: str, size: Sequence[int]) -> float:
    """Squeezing constant of the classical domain: r^-1/2, p^-1/2, [q/2]^-1/2, 2^-1/2."""
    params = CartanHartogsParams(base_type, tuple(size))
    if base_type == "I":
        return params.size[0] ** -0.5
    if base_type == "II":
        return params.size[0] ** -0.5
    if base_type == "III":
        return (params.size[0] // 2) ** -0.5
    return 2.0 ** -0.5


def cartan_hartogs_k_limit(base_type: str, size: Sequence[int]) -> float:
    """Limit of the squeezing function of Omega_hat_k as k -> 0: (s_Omega^-2 + 1)^-1/2."""
    return product_lower_bound([s_omega_constant(base_type, size), 1.0])


# ---------------------------------------------------------------------------
# Reinhardt example and its shear

@dataclass(frozen=True)
class ShearParams:
    epsilon: float = DEFAULT_SHEAR

    def __post_init__(self):
        if not (self.epsilon > 0):
            raise BadParams(f"Shear epsilon must be positive, got {self.epsilon}")


def shear_function(epsilon: float, z1: np.ndarray) -> np.ndarray:
    """f_eps(z1) = eps (z1 + 1/z1 - 2)."""
    return epsilon * (z1 + 1.0 / z1 - 2.0)


def _axes(x):
    z = _complex(x)
    return np.any(z == 0, axis=1)


def reinhardt_domain() -> DomainSpec:
    """log^2|z1|^2 + log^2|z2|^2 < 1, i.e. e^{-1/2} < |z_i| < e^{1/2} on a log-disc."""

    def rho(x):
        a = x[:, 0] ** 2 + x[:, 1] ** 2
        b = x[:, 2] ** 2 + x[:, 3] ** 2
        return np.log(a) ** 2 + np.log(b) ** 2 - 1.0

    def gradient(x):
        out = np.zeros(4)
        for block in (0, 2):
            modulus = x[block] ** 2 + x[block + 1] ** 2
            log_mod = math.log(modulus)
            out[block:block + 2] = 4.0 * log_mod * x[block:block + 2] / modulus
        return out

    def hessian(x):
        h = np.zeros((4, 4))
        for block in (0, 2):
            u, v = x[block], x[block + 1]
            modulus = u * u + v * v
            log_mod = math.log(modulus)
            h[block, block] = 4.0 * (2.0 * u * u + log_mod * (modulus - 2.0 * u * u)) / modulus ** 2
            h[block + 1, block + 1] = 4.0 * (2.0 * v * v + log_mod * (modulus - 2.0 * v * v)) / modulus ** 2
            h[block, block + 1] = h[block + 1, block] = 8.0 * u * v * (1.0 - log_mod) / modulus ** 2
        return h

    return DomainSpec(
        name="reinhardt",
        n=2,
        rho=rho,
        bbox=_box([SQRT_E] * 4),
        excluded_set=_axes,
        analytic_gradient=gradient,
        analytic_hessian=hessian,
        metadata={"boundary_point": (1.0, 0.0, SQRT_E, 0.0)},
    )


def reinhardt_sheared(params: ShearParams = ShearParams()) -> DomainSpec:
    """Image of the Reinhardt domain under F_eps(z1, z2) = (z1, z2 + f_eps(z1))."""
    epsilon = params.epsilon

    def rho(x):
        z = _complex(x)
        u = z[:, 1] - shear_function(epsilon, z[:, 0])
        return np.log(np.abs(z[:, 0]) ** 2) ** 2 + np.log(np.abs(u) ** 2) ** 2 - 1.0

    def excluded(x):
        z = _complex(x)
        with np.errstate(all="ignore"):
            u = z[:, 1] - shear_function(epsilon, z[:, 0])
        return (z[:, 0] == 0) | (u == 0)

    shift = epsilon * (2.0 * SQRT_E + 2.0)
    return DomainSpec(
        name=f"reinhardt-sheared:eps={epsilon:g}",
        n=2,
        rho=rho,
        bbox=_box([SQRT_E, SQRT_E, SQRT_E + shift, SQRT_E + shift]),
        excluded_set=excluded,
        metadata={"boundary_point": (1.0, 0.0, SQRT_E, 0.0), "epsilon": epsilon},
    )


def shear_map(epsilon: float) -> Callable[[np.ndarray], np.ndarray]:
    """F_eps as a map on (N, 4) real batches."""

    def apply(x):
        z = _complex(np.atleast_2d(x))
        image = np.stack([z[:, 0], z[:, 1] + shear_function(epsilon, z[:, 0])], axis=1)
        out = np.empty((len(z), 4))
        out[:, 0::2], out[:, 1::2] = image.real, image.imag
        return out

    return apply


def reinhardt_torus_point() -> RealPoint:
    """Boundary point with |z1| = |z2| = e^{1/(2 sqrt 2)}."""
    radius = math.exp(1.0 / (2.0 * math.sqrt(2.0)))
    return RealPoint((radius, 0.0, radius, 0.0), 2)


def reinhardt_support_scan(params: ShearParams = ShearParams(), grid: int = 500) -> Dict:
    """
    Grid maximization of g(r1, t1) = eps((e^{r1/2} + e^{-r1/2}) cos t1 - 2) + e^{sqrt(1-r1^2)/2},
    the real part of the sheared second coordinate along the boundary. The shear keeps
    (1, e^{1/2}) a supporting point only when the maximum e^{1/2} is attained solely at (0, 0).
    """
    if grid < 100:
        raise BadParams(f"Support scan grid must be at least 100 per axis, got {grid}")
    epsilon = params.epsilon
    r = np.linspace(0.0, 1.0, grid)
    theta = 2.0 * math.pi * np.arange(grid) / grid
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    g = epsilon * ((np.exp(rr / 2) + np.exp(-rr / 2)) * np.cos(tt) - 2.0) + np.exp(np.sqrt(1.0 - rr ** 2) / 2)

    peak = float(g.max())
    i, j = np.unravel_index(int(np.argmax(g)), g.shape)
    unique = int(np.sum(g >= peak - 1e-12)) == 1
    monotone = bool(np.all(np.diff(g, axis=0) <= 1e-12))
    at_origin = i == 0 and j == 0
    matches = abs(peak - SQRT_E) <= 1e-6

    return {
        "epsilon": epsilon,
        "grid": grid,
        "max_value": peak,
        "expected_max": SQRT_E,
        "argmax_r1": float(r[i]),
        "argmax_theta1": float(theta[j]),
        "unique_argmax": unique,
        "argmax_at_origin": bool(at_origin),
        "monotone_in_r1": monotone,
        "edge_r0_max": float(g[0].max()),
        "edge_r1_max": float(g[-1].max()),
        "passed": bool(matches and unique and at_origin and monotone),
    }


# ---------------------------------------------------------------------------
# Hartogs triangle

def hartogs_triangle() -> DomainSpec:
    """{0 < |z2| < |z1| < 1}; the removed set {z2 = 0} is excluded."""

    def rho(x):
        z = _complex(x)
        m1, m2 = np.abs(z[:, 0]) ** 2, np.abs(z[:, 1]) ** 2
        return np.maximum(m2 - m1, m1 - 1.0)

    def removed_points(count):
        side = max(2, int(math.sqrt(max(count, 4))))
        radii = np.linspace(0.0, 1.0, side)
        angles = 2.0 * math.pi * np.arange(side) / side
        rr, tt = np.meshgrid(radii, angles, indexing="ij")
        out = np.zeros((rr.size, 4))
        out[:, 0], out[:, 1] = (rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel()
        return out

    return DomainSpec(
        name="hartogs-triangle",
        n=2,
        rho=rho,
        bbox=_box([1.0] * 4),
        excluded_set=lambda x: (x[:, 2] == 0.0) & (x[:, 3] == 0.0),
        excluded_points=removed_points,
        metadata={"boundary_point": (1.0, 0.0, 0.5, 0.0)},
    )


def triangle_to_product(z: RealPoint) -> RealPoint:
    """(z1, z2) -> (z1, z2/z1), the Hartogs triangle onto the product of punctured discs."""
    z1, z2 = z.complex_coords()
    if not (0.0 < abs(z2) < abs(z1) < 1.0):
        raise OutsideDomain(f"{z.coords} is not in the Hartogs triangle")
    return RealPoint.from_complex([z1, z2 / z1])


def product_to_triangle(w: RealPoint) -> RealPoint:
    w1, w2 = w.complex_coords()
    if not (0.0 < abs(w1) < 1.0 and 0.0 < abs(w2) < 1.0):
        raise OutsideDomain(f"{w.coords} is not in the product of punctured discs")
    return RealPoint.from_complex([w1, w1 * w2])


def triangle_product_bound(z: RealPoint) -> float:
    """Lower bound for s_D(z) on the triangle from the exact squeezing of each punctured-disc factor."""
    w = triangle_to_product(z)
    factors = [exact_squeezing(ModelKind.PUNCTURED_DISC, RealPoint.from_complex([c])).lower
               for c in w.complex_coords()]
    return product_lower_bound(factors)


def hartogs_thickening_report(a: float, js: Sequence[int]) -> pd.DataFrame:
    """
    Points z^j = (b, b/(1+1/j)), b = (1+a)/2, of the triangle with |z2| > a for large j.

    Each row carries the product bound through the punctured-disc factors and the
    claim s_D(z^j) >= a/sqrt(2). The thickenings D_eps satisfy s_{D_eps}(z^j) -> 0,
    which is recorded as text only.
    """
    if not (0.0 < a < 1.0):
        raise OutOfRange(f"Need 0 < a < 1, got {a}")
    b = 0.5 * (1.0 + a)
    claim = a / math.sqrt(2.0)
    rows = []
    for j in js:
        z = RealPoint.from_complex([b, b / (1.0 + 1.0 / j)])
        second = abs(z.complex_coords()[1])
        bound = triangle_product_bound(z)
        rows.append({
            "j": int(j),
            "z1": b,
            "z2": second,
            "image_w2": second / b,
            "qualifies": bool(second > a),
            "product_bound": bound,
            "claimed_bound": claim,
            "holds": bool(second <= a or bound >= claim - 1e-12),
            "thickening_limit": "s_{D_eps}(z^j) -> 0 as j -> inf (not computed)",
        })
    return pd.DataFrame(rows)


# ---------------------------------------------------------------------------
# String identifiers

def parse_options(tokens: Sequence[str], identifier: str) -> Tuple[List[str], Dict[str, str]]:
    positional, options = [], {}
    for token in tokens:
        if "=" in token:
            key, value = token.split("=", 1)
            options[key.strip()] = value.strip()
        elif token:
            positional.append(token.strip())
    return positional, options


def float_option(options: Dict[str, str], key: str, default: Optional[float], identifier: str) -> float:
    if key not in options:
        if default is None:
            raise BadParams(f"{identifier}: missing required option {key}=...")
        return default
    try:
        return float(options[key])
    except ValueError:
        raise BadParams(f"{identifier}: option {key} must be a number, got {options[key]!r}")


def _int_list(text: str, identifier: str) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise BadParams(f"{identifier}: size must be comma-separated integers, got {text!r}")


def _cartan_from_tokens(positional, options, identifier):
    if len(positional) != 2:
        raise BadParams(f"{identifier}: expected cartan-hartogs:<type>:<sizes>:k=..:m=..")
    params = CartanHartogsParams(
        positional[0].upper(),
        _int_list(positional[1], identifier),
        k=float_option(options, "k", 1.0, identifier),
        m=int(float_option(options, "m", 1, identifier)),
    )
    return cartan_hartogs_domain(params)


CATALOG: Dict[str, Tuple[Callable, str]] = {
    "ball": (lambda p, o, i: ball_domain(int(float_option(o, "n", 1, i)), float_option(o, "radius", 1.0, i)),
             "ball:n=2[:radius=1] - Euclidean ball"),
    "disc": (lambda p, o, i: disc_domain(), "disc - unit disc"),
    "punctured-disc": (lambda p, o, i: punctured_disc_domain(), "punctured-disc - {0 < |z| < 1}"),
    "scaled-punctured-disc": (lambda p, o, i: punctured_disc_domain(float_option(o, "c", None, i)),
                              "scaled-punctured-disc:c=0.5 - {0 < |z| < c}"),
    "bidisc": (lambda p, o, i: polydisc_domain(2), "bidisc - unit bidisc"),
    "polydisc": (lambda p, o, i: polydisc_domain(int(float_option(o, "n", 2, i))), "polydisc:n=3 - unit polydisc"),
    "half-bidisc": (lambda p, o, i: half_bidisc_domain(), "half-bidisc - bidisc cut by x1 < 1/2"),
    "half-space-cap": (lambda p, o, i: half_space_cap_domain(int(float_option(o, "n", 1, i))),
                       "half-space-cap:n=1 - {x1 < 0} in the unit box"),
    "ellipsoid": (lambda p, o, i: ellipsoid_domain([float(v) for v in o.get("a", "1,1").split(",")]),
                  "ellipsoid:a=1,1.2,0.9,1.1 - real ellipsoid"),
    "thullen": (lambda p, o, i: thullen_domain(float_option(o, "k", None, i)),
                "thullen:k=0.5 - |z1|^{2k} + |z2|^2 < 1"),
    "cartan-hartogs": (_cartan_from_tokens, "cartan-hartogs:I:1,2:k=0.5:m=1 - Hartogs domain over a classical domain"),
    "reinhardt": (lambda p, o, i: reinhardt_domain(), "reinhardt - log^2|z1|^2 + log^2|z2|^2 < 1"),
    "reinhardt-sheared": (lambda p, o, i: reinhardt_sheared(ShearParams(float_option(o, "eps", DEFAULT_SHEAR, i))),
                          "reinhardt-sheared:eps=0.01 - image of reinhardt under the shear"),
    "hartogs-triangle": (lambda p, o, i: hartogs_triangle(), "hartogs-triangle - {0 < |z2| < |z1| < 1}"),
}


def catalog_lookup(identifier: str) -> DomainSpec:
    """Build a DomainSpec from a string identifier such as 'thullen:k=0.5'."""
    tokens = [t for t in identifier.strip().split(":")]
    name = tokens[0].lower()
    if name not in CATALOG:
        raise UnknownDomain(f"Unknown domain {identifier!r}; known: {', '.join(sorted(CATALOG))}")
    positional, options = parse_options(tokens[1:], identifier)
    builder, _ = CATALOG[name]
    try:
        return builder(positional, options, identifier)
    except SqueezeLabError:
        raise
    except (TypeError, ValueError) as e:
        raise BadParams(f"{identifier}: {e}")


def list_catalog() -> pd.DataFrame:
    return pd.DataFrame(
        [{"name": name, "usage": usage} for name, (_, usage) in sorted(CATALOG.items())]
    )


def default_boundary_point(domain: DomainSpec) -> RealPoint:
    point = domain.metadata.get("boundary_point")
    if point is None:
        raise BadParams(f"{domain.name} has no default boundary point; pass --point")
    return RealPoint(tuple(point), domain.n)
