"""Two-level decay dynamics in the Poincare-vector picture.

Level 1 is the level whose population decays when the net relaxation rate
q = (A12 - 2 B12 + 2 C12) / 2 is positive, and the splitting enters through
omega21 = (E2 - E1)/hbar (negative when level 1 lies above level 2). With
tau = (G11 - G22)/2 and lam = (G11 + G22)/2 - G12 built from the radiative
shift coefficients, the equations of motion are

    dPx/dt = q Pz Px - (omega12 + tau + lam Pz) Py
    dPy/dt = q Pz Py + (omega12 + tau + lam Pz) Px
    dPz/dt = q (Pz^2 - 1)

where omega12 = -omega21. These follow from the population equations
d(rho11)/dt = -2 q rho11 rho22 (and its mirror) together with the coherence
equation under the standard Pauli decomposition rho12 = (Px - i Py)/2; the
closed-form solution below satisfies them to machine precision (enforced by
the residual tests).

Sign conventions: two parameterizations of the transverse phase are in
circulation and they are not compatible when lam != 0. ``analytic_bloch``
carries the phase (omega21 - tau)(t - t0) + (lam/q) ln cosh q(t - t0),
which is the one consistent with the differential system above. The chirp
observables ``dipole_expectation`` / ``frequency_shift`` /
``additional_shift`` use the conventional theta parameterization
theta(t) = theta0 - tau t - (lam/q) ln cosh q(t - t0), whose ln cosh term
carries the opposite sign; it is internally consistent with the shift
-tau - lam tanh q(t - t0) and its dipole-vs-quadrupole decomposition.
The two families coincide at t = t0 and everywhere when lam = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple


class BlochVector(NamedTuple):
    px: float
    py: float
    pz: float

    def norm(self) -> float:
        return math.sqrt(self.px**2 + self.py**2 + self.pz**2)


class DensityMatrix2(NamedTuple):
    """Two-level density matrix; rho21 is implied by conjugation."""

    rho11: float
    rho22: float
    rho12: complex


@dataclass(frozen=True)
class TwoLevelParams:
    """Level splitting, shift coefficients and relaxation rates of one pair.

    The composites q, tau, lam are recomputed on every access so the object
    can never hold a stale derived value.
    """

    omega21: float
    gamma11: float = 0.0
    gamma22: float = 0.0
    gamma12: float = 0.0
    a12: float = 0.0
    b12: float = 0.0
    c12: float = 0.0
    t0: float = 0.0

    def __post_init__(self):
        for name in ("omega21", "gamma11", "gamma22", "gamma12", "a12", "b12", "c12", "t0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def q(self) -> float:
        return 0.5 * (self.a12 - 2.0 * self.b12 + 2.0 * self.c12)

    @property
    def tau(self) -> float:
        return 0.5 * (self.gamma11 - self.gamma22)

    @property
    def lam(self) -> float:
        return 0.5 * (self.gamma11 + self.gamma22) - self.gamma12

    def dipole_only(self) -> "TwoLevelParams":
        """Same parameters with the current-moment rates removed (q -> a12/2)."""
        return replace(self, b12=0.0, c12=0.0)


def derived_params(p: TwoLevelParams) -> tuple[float, float, float]:
    """Composite parameters (q, tau, lam)."""
    return p.q, p.tau, p.lam


def bloch_rhs(state: BlochVector, p: TwoLevelParams) -> BlochVector:
    """Time derivative of the Poincare vector."""
    px, py, pz = state
    q = p.q
    phi = -p.omega21 + p.tau + p.lam * pz
    return BlochVector(
        q * pz * px - phi * py,
        q * pz * py + phi * px,
        q * (pz * pz - 1.0),
    )


def density_rhs_two_level(rho: DensityMatrix2, p: TwoLevelParams) -> DensityMatrix2:
    """Time derivative of the density matrix; populations decay as -2q r11 r22."""
    r11, r22, r12 = rho
    q = p.q
    flow = 2.0 * q * r11 * r22
    bracket = (-p.omega21) + p.gamma11 * r11 - p.gamma22 * r22 - p.gamma12 * (r11 - r22)
    d12 = (-1j * bracket + q * (r11 - r22)) * r12
    return DensityMatrix2(-flow, flow, d12)


def bloch_to_density(state: BlochVector) -> DensityMatrix2:
    px, py, pz = state
    return DensityMatrix2(0.5 * (1.0 + pz), 0.5 * (1.0 - pz), 0.5 * (px - 1j * py))


def density_to_bloch(rho: DensityMatrix2) -> BlochVector:
    r11, r22, r12 = rho
    return BlochVector(2.0 * r12.real, -2.0 * r12.imag, r11 - r22)


def _log_cosh(x: float) -> float:
    # overflow-safe ln cosh
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - math.log(2.0)


def _sech(x: float) -> float:
    # overflow-safe 1/cosh: exp(-|x|) underflows to 0 gracefully
    e = math.exp(-abs(x))
    return 2.0 * e / (1.0 + e * e)


def analytic_bloch(t: float, p: TwoLevelParams) -> BlochVector:
    """Closed-form solution passing through (1, 0, 0) at t = t0.

    Pz = -tanh q(t - t0); the transverse pair carries the sech envelope and
    the phase (omega21 - tau)(t - t0) + (lam/q) ln cosh q(t - t0). Refuses
    q = 0, where the (lam/q) term is singular; integrate numerically instead.
    """
    q = p.q
    if q == 0.0:
        raise ValueError("closed form undefined at q = 0 (ln cosh / q term); use the numeric integrator")
    dt = t - p.t0
    w = q * dt
    env = _sech(w)
    phase = (p.omega21 - p.tau) * dt + (p.lam / q) * _log_cosh(w)
    return BlochVector(env * math.cos(phase), -env * math.sin(phase), -math.tanh(w))


def analytic_density(t: float, p: TwoLevelParams) -> DensityMatrix2:
    """Closed-form density matrix: logistic populations, coherence from analytic_bloch."""
    q = p.q
    if q == 0.0:
        raise ValueError("closed form undefined at q = 0; use the numeric integrator")
    bloch = analytic_bloch(t, p)
    # populations written via tanh rather than 1/(exp(2w)+1) to avoid overflow
    return bloch_to_density(bloch)


def energy_expectation(rho: DensityMatrix2, p: TwoLevelParams) -> float:
    """<H0> with the energy zero midway between the levels (E2 = -E1 = omega21/2)."""
    return 0.5 * p.omega21 * (rho.rho22 - rho.rho11)


def dipole_expectation(t: float, p: TwoLevelParams, d21: float,
                       theta0: float | None = None) -> tuple[float, float]:
    """Dipole projection d21 sech q(t-t0) cos(omega21 t + theta(t)) and theta(t).

    theta(t) = theta0 - tau t - (lam/q) ln cosh q(t - t0), with theta0
    defaulting to (tau - omega21) t0 so the carrier is unshifted at t0.
    d/dt theta reproduces ``frequency_shift``. Equals d21 * Px of the
    closed-form trajectory when lam = 0 (see the module note on signs).
    """
    q = p.q
    if q == 0.0:
        raise ValueError("theta undefined at q = 0 (ln cosh / q term); use the numeric integrator")
    if theta0 is None:
        theta0 = (p.tau - p.omega21) * p.t0
    dt = t - p.t0
    w = q * dt
    theta = theta0 - p.tau * t - (p.lam / q) * _log_cosh(w)
    value = d21 * _sech(w) * math.cos(p.omega21 * t + theta)
    return value, theta


def frequency_shift(t: float, p: TwoLevelParams) -> float:
    """Instantaneous shift of the transition frequency: -tau - lam tanh q(t - t0)."""
    return -p.tau - p.lam * math.tanh(p.q * (t - p.t0))


def additional_shift(t: float, p: TwoLevelParams) -> float:
    """Contribution of the current-moment rates to the frequency shift.

    Written with the inverted-index rates a21 = -a12, b21 = -b12, c21 = -c12:

        lam tanh[(c21-b21) dt] sech^2[a21 dt / 2]
        -----------------------------------------
        1 + tanh[a21 dt / 2] tanh[(c21-b21) dt]

    By the tanh addition formula this equals frequency_shift with the full q
    minus frequency_shift with the dipole-only q = a12/2, exactly.
    """
    dt = t - p.t0
    x = -0.5 * p.a12 * dt              # a21 dt / 2
    y = (p.b12 - p.c12) * dt           # (c21 - b21) dt
    sech_x = _sech(x)
    denom = 1.0 + math.tanh(x) * math.tanh(y)
    value = p.lam * math.tanh(y) * sech_x * sech_x / denom if denom != 0.0 else math.nan
    if not math.isfinite(value):
        # saturated tanh at extreme arguments; fall back to the identical difference form
        return frequency_shift(t, p) - frequency_shift(t, p.dipole_only())
    return value
