"""Closed-form hydrogenic bound states.

States use complex spherical harmonics with the Condon-Shortley phase;
lengths are in Bohr radii, energies in hartree. Values and gradients are
assembled from a Cartesian recursion for solid harmonics r^l Y_lm, which
keeps the evaluation polynomial in (x, y, z): there is no spherical-angle
chain rule, so points on the polar axis are as good as any other point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre

_ORBITAL_LETTERS = "spdfghik"


@dataclass(frozen=True)
class BoundState:
    """Hydrogenic level (n, l, m) bound to a pointlike nucleus of charge z.

    Quantum numbers are validated at construction: n >= 1, 0 <= l <= n-1,
    -l <= m <= l. ``z_charge`` may be fractional (screened effective charge).
    """

    n: int
    l: int
    m: int = 0
    z_charge: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"principal quantum number must be >= 1, got n={self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValueError(f"orbital quantum number must satisfy 0 <= l <= n-1, got l={self.l} for n={self.n}")
        if not -self.l <= self.m <= self.l:
            raise ValueError(f"magnetic quantum number must satisfy |m| <= l, got m={self.m} for l={self.l}")
        if self.z_charge <= 0:
            raise ValueError(f"nuclear charge must be positive, got {self.z_charge}")

    @property
    def parity(self) -> int:
        return -1 if self.l % 2 else 1

    @property
    def decay_constant(self) -> float:
        """Asymptotic exponential decay rate z/n of the radial function."""
        return self.z_charge / self.n

    def label(self) -> str:
        letter = _ORBITAL_LETTERS[self.l] if self.l < len(_ORBITAL_LETTERS) else f"(l={self.l})"
        if self.m == 0:
            return f"{self.n}{letter}"
        return f"{self.n}{letter}{self.m:+d}"


def bound_energy(state: BoundState) -> float:
    """Energy of the level in hartree: -z^2 / (2 n^2)."""
    return -0.5 * state.z_charge**2 / state.n**2


def transition_frequency(a: BoundState, b: BoundState) -> float:
    """Angular frequency (E_a - E_b)/hbar in atomic units; antisymmetric in (a, b)."""
    if a.z_charge != b.z_charge:
        raise ValueError("transition frequency is defined for levels of the same atom (equal z_charge)")
    return bound_energy(a) - bound_energy(b)


def _solid_harmonic_table(l_max, pts):
    """Complex solid harmonics r^l Y_lm and their Cartesian gradients.

    Returns dicts keyed by (l, m) for 0 <= m <= l <= l_max. The recursion
    carries the gradient alongside the value, so both are exact polynomial
    evaluations (no pole at sin(theta) = 0).
    """
    x = pts[..., 0]
    y = pts[..., 1]
    z = pts[..., 2]
    r2 = x * x + y * y + z * z
    xy = x + 1j * y

    vals = {}
    grads = {}
    shape = x.shape
    vals[(0, 0)] = np.full(shape, 0.5 / math.sqrt(math.pi), dtype=complex)
    grads[(0, 0)] = np.zeros(shape + (3,), dtype=complex)

    for l in range(1, l_max + 1):
        # diagonal: S_l^l = -sqrt((2l+1)/(2l)) (x + iy) S_{l-1}^{l-1}
        c = -math.sqrt((2 * l + 1) / (2 * l))
        v0 = vals[(l - 1, l - 1)]
        g0 = grads[(l - 1, l - 1)]
        vals[(l, l)] = c * xy * v0
        g = np.empty(shape + (3,), dtype=complex)
        g[..., 0] = c * (v0 + xy * g0[..., 0])
        g[..., 1] = c * (1j * v0 + xy * g0[..., 1])
        g[..., 2] = c * xy * g0[..., 2]
        grads[(l, l)] = g

        # first subdiagonal: S_l^{l-1} = sqrt(2l+1) z S_{l-1}^{l-1}
        c = math.sqrt(2 * l + 1)
        vals[(l, l - 1)] = c * z * v0
        g = c * z[..., None] * g0
        g[..., 2] += c * v0
        grads[(l, l - 1)] = g

        # downward in m: S_l^m = a [z S_{l-1}^m - b r^2 S_{l-2}^m]
        for m in range(l - 2, -1, -1):
            a = math.sqrt((4 * l * l - 1) / (l * l - m * m))
            b = math.sqrt(((l - 1) ** 2 - m * m) / (4 * (l - 1) ** 2 - 1))
            v1 = vals[(l - 1, m)]
            g1 = grads[(l - 1, m)]
            v2 = vals[(l - 2, m)]
            g2 = grads[(l - 2, m)]
            vals[(l, m)] = a * (z * v1 - b * r2 * v2)
            g = np.empty(shape + (3,), dtype=complex)
            g[..., 0] = a * (z * g1[..., 0] - b * (2 * x * v2 + r2 * g2[..., 0]))
            g[..., 1] = a * (z * g1[..., 1] - b * (2 * y * v2 + r2 * g2[..., 1]))
            g[..., 2] = a * (v1 + z * g1[..., 2] - b * (2 * z * v2 + r2 * g2[..., 2]))
            grads[(l, m)] = g

    return vals, grads


def solid_harmonic(l, m, points):
    """Evaluate r^l Y_lm and its Cartesian gradient at ``points`` (shape (..., 3))."""
    pts = np.asarray(points, dtype=float)
    vals, grads = _solid_harmonic_table(l, pts)
    if m >= 0:
        return vals[(l, m)], grads[(l, m)]
    # S_l^{-m} = (-1)^m conj(S_l^m); coordinates are real so the gradient conjugates too
    sign = -1.0 if m % 2 else 1.0
    return sign * np.conj(vals[(l, -m)]), sign * np.conj(grads[(l, -m)])


def _radial_envelope(state: BoundState, r):
    """g(r) = R_nl(r) / r^l and its derivative; both are smooth through r = 0.

    R_nl(r) = N exp(-u/2) u^l L_{n-l-1}^{2l+1}(u) with u = (2z/n) r, so
    g(r) = N (2z/n)^l exp(-u/2) L(u). Using dL_k^a/du = -L_{k-1}^{a+1}(u).
    """
    n, l, z = state.n, state.l, state.z_charge
    a = 2.0 * z / n
    norm = math.sqrt(a**3 * math.factorial(n - l - 1) / (2 * n * math.factorial(n + l)))
    u = a * r
    lag = eval_genlaguerre(n - l - 1, 2 * l + 1, u)
    if n - l - 2 >= 0:
        dlag = -eval_genlaguerre(n - l - 2, 2 * l + 2, u)
    else:
        dlag = np.zeros_like(u)
    envelope = np.exp(-0.5 * u)
    g = norm * a**l * envelope * lag
    gp = norm * a ** (l + 1) * envelope * (dlag - 0.5 * lag)
    return g, gp


def radial_wavefunction(state: BoundState, r):
    """Radial function R_nl(r) and dR_nl/dr (normalized: int R^2 r^2 dr = 1)."""
    r = np.asarray(r, dtype=float)
    g, gp = _radial_envelope(state, r)
    l = state.l
    if l == 0:
        return g, gp
    rl = r**l
    return g * rl, gp * rl + l * g * r ** (l - 1)


def eigenstate_eval(state: BoundState, point):
    """Wavefunction value and analytic Cartesian gradient at ``point``.

    ``point`` is an array of shape (..., 3) in Bohr radii; returns a complex
    array of shape (...,) and a complex gradient of shape (..., 3). The
    gradient combines the closed-form radial derivative with the solid
    harmonic gradient. At the exact origin the s-state gradient direction is
    undefined (Coulomb cusp); the radial term is dropped there.
    """
    pts = np.asarray(point, dtype=float)
    if pts.shape[-1] != 3:
        raise ValueError("point must have shape (..., 3)")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point must be finite")
    scalar = pts.ndim == 1

    r = np.sqrt(np.sum(pts * pts, axis=-1))
    g, gp = _radial_envelope(state, r)
    sval, sgrad = solid_harmonic(state.l, state.m, pts)

    psi = g * sval
    with np.errstate(invalid="ignore", divide="ignore"):
        rhat = np.where(r[..., None] > 0.0, pts / np.where(r[..., None] > 0.0, r[..., None], 1.0), 0.0)
    grad = gp[..., None] * rhat * sval[..., None] + g[..., None] * sgrad

    if scalar:
        return psi[()], grad
    return psi, grad
