"""Closed-form two-time analysis of the double-slit experiment.

The post-slit state is a two-path superposition with amplitudes
cos(phi) e^{i theta_+} and sin(phi) e^{i theta_-}; only the relative phase
theta = theta_+ - theta_- matters.  In the narrow-slit (stationary-phase)
limit every density on the screen depends on position only through the
reduced phase

    Y = 2 m x L / (hbar tau) - theta,

and, in units of the undetermined envelope |N_t|^2,

    q(+-, x) = (1 +- cos 2phi + sin 2phi cos Y) / 2,
    p2(x)    = q(+, x) + q(-, x) = 1 + sin 2phi cos Y,
    p12(s1)  = (1 + s1 cos 2phi) / 2.

Negativity of either q is an LG violation; sin(2phi) cos(Y) < 0 is
destructive interference.  A violation forces destructive interference
(min q < 0 iff sin 2phi cos Y < |cos 2phi| - 1 <= 0) but not conversely.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import (
    SCAN_VIOLATION_TOL,
    QuasiProbTable,
    RegionClassification,
)
from .errors import DomainError, OracleConvergenceError

__all__ = [
    "SlitStateDouble",
    "ScreenPhaseDouble",
    "DoubleSlitDensities",
    "densities",
    "re_interference",
    "classify",
    "classification_grid",
    "postselected_table",
    "postselected_min",
    "verify_against_oracle",
]


@dataclass(frozen=True)
class SlitStateDouble:
    """Two-path amplitudes |alpha_+| = cos(phi), |alpha_-| = sin(phi) with
    relative phase ``theta``; normalized for every phi."""

    phi: float
    theta: float = 0.0

    @property
    def amplitudes(self) -> tuple[complex, complex]:
        """(alpha_+, alpha_-) with the relative phase put on the + arm."""
        return (
            math.cos(self.phi) * cmath.exp(1j * self.theta),
            complex(math.sin(self.phi)),
        )


@dataclass(frozen=True)
class ScreenPhaseDouble:
    """Reduced screen phase Y; optionally carries the raw inputs it came from."""

    Y: float
    m: float | None = None
    x: float | None = None
    L: float | None = None
    tau: float | None = None
    hbar: float = 1.0
    theta: float | None = None

    def __post_init__(self):
        raw = (self.m, self.x, self.L, self.tau, self.theta)
        if any(v is not None for v in raw):
            if any(v is None for v in raw):
                raise DomainError(
                    "raw screen inputs require all of m, x, L, tau, theta"
                )
            expected = 2.0 * self.m * self.x * self.L / (self.hbar * self.tau) - self.theta
            if abs(expected - self.Y) > 1e-12 * max(1.0, abs(expected)):
                raise DomainError(
                    f"stored Y={self.Y!r} disagrees with raw inputs ({expected!r})"
                )

    @classmethod
    def from_physical(cls, m: float, x: float, L: float, tau: float,
                      theta: float, hbar: float = 1.0) -> "ScreenPhaseDouble":
        if tau <= 0 or hbar <= 0:
            raise DomainError("tau and hbar must be positive")
        Y = 2.0 * m * x * L / (hbar * tau) - theta
        return cls(Y=Y, m=m, x=x, L=L, tau=tau, hbar=hbar, theta=theta)


@dataclass(frozen=True)
class DoubleSlitDensities:
    """Screen densities in per-|N_t|^2 units at one (state, Y) point."""

    q_plus: float
    q_minus: float
    p2: float
    p12_plus: float
    p12_minus: float

    def __post_init__(self):
        if abs(self.q_plus + self.q_minus - self.p2) > 1e-12:
            raise DomainError("q_plus + q_minus must equal p2")
        if abs(self.p12_plus + self.p12_minus - 1.0) > 1e-12:
            raise DomainError("p12 entries must sum to 1 (per |N_t|^2)")
        if self.q_plus < 0.0 and self.q_minus < 0.0:
            raise DomainError("at most one quasi-probability can be negative")

    @property
    def re_D(self) -> float:
        """Interference term Re D, independent of the first outcome."""
        return 0.5 * (self.p2 - (self.p12_plus + self.p12_minus))


def densities(state: SlitStateDouble, screen: ScreenPhaseDouble) -> DoubleSlitDensities:
    """Quasi-probability and measured densities at one screen phase."""
    c2 = math.cos(2.0 * state.phi)
    interference = math.sin(2.0 * state.phi) * math.cos(screen.Y)
    q_plus = 0.5 * (1.0 + c2 + interference)
    q_minus = 0.5 * (1.0 - c2 + interference)
    return DoubleSlitDensities(
        q_plus=q_plus,
        q_minus=q_minus,
        p2=q_plus + q_minus,
        p12_plus=0.5 * (1.0 + c2),
        p12_minus=0.5 * (1.0 - c2),
    )


def re_interference(state: SlitStateDouble, screen: ScreenPhaseDouble) -> float:
    """Re D(s1, x | -s1, x) in per-|N_t|^2 units (independent of s1)."""
    return 0.5 * math.sin(2.0 * state.phi) * math.cos(screen.Y)


def classify(state: SlitStateDouble, screen: ScreenPhaseDouble,
             violation_tol: float = SCAN_VIOLATION_TOL) -> RegionClassification:
    """Destructive-interference and LG-violation flags at one point.

    The measure-zero boundaries (zero interference, zero quasi-probability)
    count as non-destructive / non-violated; the violation threshold sits at
    ``-violation_tol`` so exact analytic zeros cannot flag through rounding
    noise.
    """
    d = densities(state, screen)
    interference = math.sin(2.0 * state.phi) * math.cos(screen.Y)
    min_q = min(d.q_plus, d.q_minus)
    which = 1 if d.q_plus <= d.q_minus else -1
    return RegionClassification(
        point=(state.phi, screen.Y),
        flags={
            "destructive": interference < 0.0,
            "lg_violated": min_q < -violation_tol,
        },
        min_quasi=min_q,
        which_min=which,
    )


def classification_grid(phis, Ys, violation_tol: float = SCAN_VIOLATION_TOL):
    """Vectorized scan over a (phi, Y) product grid.

    Returns a dict of 2-d arrays: q_plus, q_minus, p2, destructive,
    lg_violated (booleans use a -violation_tol threshold so boundary noise
    never flags).
    """
    phis = np.asarray(phis, dtype=float)
    Ys = np.asarray(Ys, dtype=float)
    P, Y = np.meshgrid(phis, Ys, indexing="ij")
    q_plus, q_minus, p2, interference = kernels.double_slit_grid(
        P.ravel(), Y.ravel()
    )
    shape = P.shape
    return {
        "q_plus": q_plus.reshape(shape),
        "q_minus": q_minus.reshape(shape),
        "p2": p2.reshape(shape),
        "destructive": (interference < 0.0).reshape(shape),
        "lg_violated": (np.minimum(q_plus, q_minus) < -violation_tol).reshape(shape),
    }


def postselected_table(state: SlitStateDouble) -> QuasiProbTable:
    """Normalized 2x2 table after post-selecting onto the bright/dark fringes.

    Post-selecting s2 = +1 onto -pi/2 < Y < pi/2 and s2 = -1 onto
    pi/2 < Y < 3pi/2 integrates cos Y to +-2 over each window, the envelope
    cancels, and

        q(s1, s2) = (1 + cos(2 phi) s1 + (2/pi) sin(2 phi) s2) / 4

    in absolute units.  Moments: <Q1> = cos 2phi, <Q2> = (2/pi) sin 2phi,
    C12 = 0.
    """
    c2 = math.cos(2.0 * state.phi)
    s2 = math.sin(2.0 * state.phi)
    q = np.empty((2, 2))
    outcomes = (1, -1)
    for i, o1 in enumerate(outcomes):
        for j, o2 in enumerate(outcomes):
            q[i, j] = 0.25 * (1.0 + c2 * o1 + (2.0 / math.pi) * s2 * o2)
    q[1, 1] = math.fsum((1.0, -q[0, 0], -q[0, 1], -q[1, 0]))
    return QuasiProbTable(outcomes, outcomes, q, norm_units="absolute")


def postselected_min() -> tuple[float, float]:
    """(phi*, minimum entry) of the post-selected table over all phi.

    The minimum of (1 - |cos 2phi| - (2/pi)|sin 2phi|)/4 over phi is
    (1 - sqrt(1 + 4/pi^2))/4, attained where tan 2phi = 2/pi.
    """
    k = 2.0 / math.pi
    phi_star = 0.5 * math.atan2(k, 1.0)
    return phi_star, 0.25 * (1.0 - math.sqrt(1.0 + k * k))


# ---------------------------------------------------------------------------
# quadrature oracle: finite slit width, direct free propagation
# ---------------------------------------------------------------------------

def _evolved_slit_amplitude(x, s, L, width, tau, m, hbar, quad_limit):
    """psi_s(x, tau) for a narrow Gaussian slit at s L, by quadrature."""
    from scipy.integrate import IntegrationWarning, quad

    prefactor = cmath.sqrt(m / (2j * math.pi * hbar * tau))
    norm = (2.0 * math.pi * width * width) ** (-0.25)
    center = s * L

    def f(y):
        return (
            prefactor
            * cmath.exp(1j * m * (x - y) ** 2 / (2.0 * hbar * tau))
            * norm
            * math.exp(-((y - center) ** 2) / (4.0 * width * width))
        )

    lo, hi = center - 10.0 * width, center + 10.0 * width
    with warnings.catch_warnings():
        warnings.simplefilter("error", category=IntegrationWarning)
        try:
            re = quad(lambda y: f(y).real, lo, hi,
                      epsabs=1e-13, epsrel=1e-11, limit=quad_limit)[0]
            im = quad(lambda y: f(y).imag, lo, hi,
                      epsabs=1e-13, epsrel=1e-11, limit=quad_limit)[0]
        except IntegrationWarning as exc:
            raise OracleConvergenceError(
                f"slit propagation quadrature did not converge: {exc}"
            ) from exc
    return complex(re, im)


def verify_against_oracle(
    state: SlitStateDouble,
    Y_grid,
    width_ratio: float = 1e-3,
    L: float = 1.0,
    tau: float = 1.0,
    m: float = 1.0,
    hbar: float = 1.0,
    quad_limit: int = 400,
) -> float:
    """Compare the narrow-slit closed form against direct quadrature.

    Builds finite-width Gaussian slits (width = ``width_ratio`` * L),
    propagates them freely by numerical quadrature, forms the screen
    density, and compares its mean-normalized fringe shape against the
    closed form 1 + sin(2 phi) cos(Y) on ``Y_grid``.  Returns the maximum
    deviation relative to the peak of the closed-form shape; it vanishes as
    the width goes to zero.

    Oracle non-convergence raises :class:`OracleConvergenceError`, distinct
    from a value mismatch (which just shows up as a large return value).
    """
    if not (0.0 < width_ratio < 0.1):
        raise DomainError("width_ratio must be in (0, 0.1) for a narrow slit")
    Ys = np.asarray(Y_grid, dtype=float)
    if Ys.size < 2:
        raise DomainError("Y_grid needs at least two points")
    width = width_ratio * L
    alpha_plus, alpha_minus = state.amplitudes
    xs = (Ys + state.theta) * hbar * tau / (2.0 * m * L)
    oracle = np.empty(Ys.size)
    for i, x in enumerate(xs):
        psi_p = _evolved_slit_amplitude(x, +1, L, width, tau, m, hbar, quad_limit)
        psi_m = _evolved_slit_amplitude(x, -1, L, width, tau, m, hbar, quad_limit)
        oracle[i] = abs(alpha_plus * psi_p + alpha_minus * psi_m) ** 2
    closed = 1.0 + math.sin(2.0 * state.phi) * np.cos(Ys)
    closed_mean = closed.mean()
    if closed_mean <= 0.0 or oracle.mean() <= 0.0:
        raise DomainError("degenerate fringe window (zero mean density)")
    shape_oracle = oracle / oracle.mean()
    shape_closed = closed / closed_mean
    return float(
        np.max(np.abs(shape_oracle - shape_closed)) / np.max(np.abs(shape_closed))
    )
