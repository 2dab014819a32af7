"""Product quadrature grids for hydrogenic matrix elements.

Radial integrals over [0, inf) use scaled Gauss-Laguerre nodes; the solid
angle uses Gauss-Legendre nodes in cos(theta) tensored with a uniform
azimuthal grid. The angular product integrates any spherical-harmonic
expansion exactly up to the configured order, and the radial rule is exact
for exp(-scale*r) times polynomials once the scale matches the integrand's
decay, which is the case for every hydrogenic pair integral here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .hydrogenic import BoundState


class QuadratureError(RuntimeError):
    """Raised when a grid cannot resolve the states it is asked to integrate."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid resolution: radial node count, optional fixed radial scale
    (inverse length; None = match the pair being integrated), and the
    spherical-harmonic order the angular grid integrates exactly."""

    radial_node_count: int = 200
    radial_scale: float | None = None
    angular_order: int = 35

    def __post_init__(self):
        if self.radial_node_count < 16:
            raise ValueError(f"radial_node_count must be >= 16, got {self.radial_node_count}")
        if self.radial_scale is not None and self.radial_scale <= 0:
            raise ValueError(f"radial_scale must be positive, got {self.radial_scale}")
        if self.angular_order < 1:
            raise ValueError(f"angular_order must be >= 1, got {self.angular_order}")


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=None)
def _radial_rule(count: int):
    """Nodes x_i and lifted weights W_i = w_i e^{x_i} for int_0^inf f(x) dx.

    Nodes are the eigenvalues of the Laguerre Jacobi matrix. The lifted
    weights come from the Christoffel identity W = 1 / sum_k phit_k(x)^2
    evaluated with the exponentially scaled orthonormal polynomials
    phit_k = phi_k e^{-x/2}, which keeps every quantity in range where
    library Laguerre rules underflow (raw weights die past x ~ 745). Nodes
    beyond x = 1400, where even the scaled start value underflows, are
    dropped; their true contributions are below e^-1400.
    """
    k = np.arange(count, dtype=float)
    x = eigh_tridiagonal(2.0 * k + 1.0, np.arange(1.0, count), eigvals_only=True)
    x = x[x <= 1400.0]

    phi_prev = np.exp(-0.5 * x)
    total = phi_prev * phi_prev
    if count > 1:
        phi = (x - 1.0) * phi_prev
        total += phi * phi
        for j in range(1, count - 1):
            phi_prev, phi = phi, ((x - (2.0 * j + 1.0)) * phi - j * phi_prev) / (j + 1.0)
            total += phi * phi
    lifted = 1.0 / total
    x.setflags(write=False)
    lifted.setflags(write=False)
    return x, lifted


@lru_cache(maxsize=None)
def _angular_rule(order: int):
    """Unit vectors and weights integrating Y_lm exactly for l <= order."""
    n_theta = (order + 2) // 2          # Gauss-Legendre: exact to degree 2n-1
    n_phi = order + 1                   # trapezoid: exact for |m| <= n_phi - 1
    u, wu = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    sin_t = np.sqrt(1.0 - u * u)

    nx = np.outer(sin_t, np.cos(phi)).ravel()
    ny = np.outer(sin_t, np.sin(phi)).ravel()
    nz = np.outer(u, np.ones(n_phi)).ravel()
    unit = np.stack([nx, ny, nz], axis=-1)
    weights = np.repeat(wu, n_phi) * (2.0 * math.pi / n_phi)
    unit.setflags(write=False)
    weights.setflags(write=False)
    return unit, weights


@dataclass(frozen=True)
class Grid:
    """Flattened 3D product grid: sum(weights * f(points)) == int f d^3x."""

    points: np.ndarray       # (N, 3)
    weights: np.ndarray      # (N,)
    radial_scale: float
    spec: QuadratureSpec


def pair_scale(a: BoundState, b: BoundState) -> float:
    """Combined exponential decay z_a/n_a + z_b/n_b of a product of states."""
    return a.decay_constant + b.decay_constant


def grid_for_pair(a: BoundState, b: BoundState, spec: QuadratureSpec | None = None) -> Grid:
    spec = spec or DEFAULT_SPEC
    scale = spec.radial_scale if spec.radial_scale is not None else pair_scale(a, b)
    x, lifted = _radial_rule(spec.radial_node_count)
    r = x / scale
    w_r = lifted / scale * r * r        # includes the r^2 volume measure

    unit, w_ang = _angular_rule(spec.angular_order)
    points = (r[:, None, None] * unit[None, :, :]).reshape(-1, 3)
    weights = (w_r[:, None] * w_ang[None, :]).ravel()
    points.setflags(write=False)
    weights.setflags(write=False)
    return Grid(points=points, weights=weights, radial_scale=scale, spec=spec)


def integrate_values(grid: Grid, values: np.ndarray):
    """Contract sample values (leading axis N) against the grid weights."""
    return np.tensordot(grid.weights, values, axes=(0, 0))
