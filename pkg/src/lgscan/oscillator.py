"""Exact two-time quasi-probability for a Gaussian state of the oscillator.

The dichotomic variable is the sign of position, measured at t and at 0,
with the initial state a Gaussian of spread sigma and momentum p0 centered
at the origin.  The half-line Gaussian integral behind the sequential
amplitude evaluates in closed form, and the remaining screen integral gives

    q(s1, s2) = [1 + s2 erf(g) - 4 s1 s2 Re T(sqrt(2) g, i/sqrt(A))] / 4

with T the Owen T-function continued to a complex endpoint and

    g = sqrt(A) z(0) = sqrt(2) p0 sigma/hbar (1 + 4 u^2)^(-1/2),
    i/sqrt(A)        = (i/sqrt(2)) (1 + 2 i u)^(1/2),
    u = omega t_s cot(omega t),   t_s = m sigma^2 / hbar.

The free particle is the omega -> 0 limit, u = t_s / t = 1/(2 tau) with
tau = t/(2 t_s); the coherent state has 2 omega t_s = 1.  Everything is
controlled by the dimensionless pair (p' = p0 sigma/hbar, u).

``quasi_minus_plus_oracle`` evaluates the defining double integral for
q(-,+) by nested adaptive quadrature of the propagator, sharing nothing
with the closed-form path; it is the validation oracle for the above.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import QuasiProbTable, TwoTimeMoments, quasi_from_moments
from .errors import (
    DomainError,
    OracleConvergenceError,
    SingularPropagatorError,
)
from .special import owen_t

__all__ = [
    "OscillatorParams",
    "GaussianIntegralCoeffs",
    "coeffs",
    "quasi_table",
    "quasi_minus_plus_oracle",
    "violation_scan",
    "ViolationScanReport",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class OscillatorParams:
    """Oscillator and initial-state parameters; frequency 0 selects the
    free particle."""

    mass: float
    frequency: float
    sigma: float
    p0: float
    t: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.mass <= 0 or self.sigma <= 0 or self.t <= 0 or self.hbar <= 0:
            raise DomainError("mass, sigma, t and hbar must be positive")
        if self.frequency < 0:
            raise DomainError("frequency must be >= 0 (0 = free particle)")

    @property
    def t_s(self) -> float:
        """Wave-packet spreading timescale m sigma^2 / hbar."""
        return self.mass * self.sigma**2 / self.hbar

    @property
    def is_coherent(self) -> bool:
        """Coherent-state condition 2 omega t_s = 1."""
        return abs(2.0 * self.frequency * self.t_s - 1.0) < 1e-12

    @property
    def pprime(self) -> float:
        """Dimensionless momentum p' = p0 sigma / hbar."""
        return self.p0 * self.sigma / self.hbar

    @property
    def u(self) -> float:
        """omega t_s cot(omega t), or its free limit t_s/t."""
        if self.frequency == 0.0:
            return self.t_s / self.t
        wt = self.frequency * self.t
        s = math.sin(wt)
        if abs(s) < 1e-12:
            raise SingularPropagatorError(
                f"omega t = {wt!r} sits on a propagator caustic (sin = 0)"
            )
        return self.frequency * self.t_s * math.cos(wt) / s

    @classmethod
    def coherent(cls, omega: float, pprime: float, omega_t: float,
                 mass: float = 1.0, hbar: float = 1.0) -> "OscillatorParams":
        """Coherent state (sigma^2 = hbar/(2 m omega)) at phase omega_t."""
        if omega <= 0:
            raise DomainError("coherent state needs omega > 0")
        sigma = math.sqrt(hbar / (2.0 * mass * omega))
        return cls(mass=mass, frequency=omega, sigma=sigma,
                   p0=pprime * hbar / sigma, t=omega_t / omega, hbar=hbar)

    @classmethod
    def from_dimensionless(cls, pprime: float, omega_t: float,
                           omega_t_s: float = 0.5) -> "OscillatorParams":
        """Unit-system-free constructor: m = hbar = sigma = 1, so t_s = 1,
        omega = omega_t_s (default 0.5 = coherent state)."""
        if omega_t_s <= 0:
            raise DomainError("omega_t_s must be positive")
        return cls(mass=1.0, frequency=omega_t_s, sigma=1.0, p0=pprime,
                   t=omega_t / omega_t_s)

    @classmethod
    def free_particle(cls, pprime: float, tau: float) -> "OscillatorParams":
        """Free particle at dimensionless time tau = t/(2 t_s);
        m = hbar = sigma = 1."""
        if tau <= 0:
            raise DomainError("tau must be positive")
        return cls(mass=1.0, frequency=0.0, sigma=1.0, p0=pprime, t=2.0 * tau)


@dataclass(frozen=True)
class GaussianIntegralCoeffs:
    """Complex coefficients of the half-line Gaussian integral.

    ``a`` and ``z0`` come from the first-principles definitions;
    ``sqrtA_z0`` (real) and ``inv_sqrtA`` (= i/sqrt(A)) are the explicit
    reduced expressions.  ``coeffs`` guarantees the two routes agree.
    """

    a: complex
    b0: float
    A: complex
    z0: complex
    sqrtA_z0: float
    inv_sqrtA: complex


def coeffs(p: OscillatorParams) -> GaussianIntegralCoeffs:
    """Evaluate the Gaussian-integral coefficients both ways and check them.

    Raw route: a = m omega cos(wt)/(2 i hbar sin(wt)) + 1/(4 sigma^2),
    b(0) = p0/hbar, A = a (1/a + 1/a*), z(0) = b(0)/(2 sqrt(a)) with the
    Re(sqrt) > 0 branch (well defined because Re(a) > 0, which is also what
    makes the integral converge).  Reduced route: the closed expressions in
    (p', u) quoted in the module docstring.  Both must agree to 1e-12 and
    sqrt(A) z(0) must be real to 1e-12.
    """
    u = p.u  # raises on caustics
    omega_cot = u / p.t_s  # omega cot(omega t), finite in the free limit
    a = complex(1.0 / (4.0 * p.sigma**2), -p.mass * omega_cot / (2.0 * p.hbar))
    if not a.real > 0.0:
        raise DomainError("Re(a) <= 0: Gaussian integral would diverge")
    b0 = p.p0 / p.hbar
    A = a * (1.0 / a + 1.0 / a.conjugate())
    z0 = b0 / (2.0 * cmath.sqrt(a))
    sqrtA_z0 = (
        _SQRT2 * p.p0 * p.sigma / p.hbar / math.sqrt(1.0 + 4.0 * u * u)
    )
    inv_sqrtA = (1j / _SQRT2) * cmath.sqrt(1.0 + 2.0j * u)

    raw_g = cmath.sqrt(A) * z0
    scale = max(1.0, abs(raw_g))
    if abs(raw_g.imag) > 1e-12 * scale:
        raise DomainError(f"sqrt(A) z(0) is not real: {raw_g!r}")
    if abs(raw_g - sqrtA_z0) > 1e-12 * scale:
        raise DomainError(
            f"coefficient routes disagree: raw {raw_g!r} vs reduced {sqrtA_z0!r}"
        )
    raw_inv = 1j / cmath.sqrt(A)
    if abs(raw_inv - inv_sqrtA) > 1e-12 * max(1.0, abs(raw_inv)):
        raise DomainError(
            f"coefficient routes disagree: raw {raw_inv!r} vs reduced {inv_sqrtA!r}"
        )
    return GaussianIntegralCoeffs(
        a=a, b0=b0, A=A, z0=z0, sqrtA_z0=sqrtA_z0, inv_sqrtA=inv_sqrtA
    )


def quasi_table(p: OscillatorParams) -> QuasiProbTable:
    """Absolute-unit 2x2 table for sign-of-position measurements at 0 and t.

    Moments: <Q1> = 0 (origin-centered Gaussian), <Q2> = erf(g),
    C12 = -4 Re T[sqrt(2) g, i/sqrt(A)].
    """
    c = coeffs(p)
    g = c.sqrtA_z0
    mean2 = kernels.erf_c(complex(g)).real
    re_t = owen_t(_SQRT2 * g, c.inv_sqrtA).real
    return quasi_from_moments(TwoTimeMoments(0.0, mean2, -4.0 * re_t))


def _propagator_factory(p: OscillatorParams):
    """(prefactor, phase) closure for <x| e^{-iHt} |y>."""
    if p.frequency == 0.0:
        pref = cmath.sqrt(p.mass / (2j * math.pi * p.hbar * p.t))
        coef = 1j * p.mass / (2.0 * p.hbar * p.t)

        def kernel(x, y):
            return pref * cmath.exp(coef * (x - y) ** 2)

        return kernel
    wt = p.frequency * p.t
    s, co = math.sin(wt), math.cos(wt)
    if abs(s) < 1e-12:
        raise SingularPropagatorError(f"omega t = {wt!r} sits on a caustic")
    pref = cmath.sqrt(p.mass * p.frequency / (2j * math.pi * p.hbar * s))
    coef = 1j * p.mass * p.frequency / (2.0 * p.hbar * s)

    def kernel(x, y):
        return pref * cmath.exp(coef * ((x * x + y * y) * co - 2.0 * x * y))

    return kernel


def _evolved_width(p: OscillatorParams) -> float:
    if p.frequency == 0.0:
        return p.sigma * math.sqrt(1.0 + (p.t / (2.0 * p.t_s)) ** 2)
    wt = p.frequency * p.t
    spread = p.hbar / (2.0 * p.mass * p.sigma * p.frequency)
    return math.sqrt((p.sigma * math.cos(wt)) ** 2 + (spread * math.sin(wt)) ** 2)


def quasi_minus_plus_oracle(
    p: OscillatorParams,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-11,
    coverage: float = 10.0,
    quad_limit: int = 400,
) -> float:
    """q(-, +) by direct nested quadrature of the propagator integrals.

    Evaluates Re int_0^inf dx psi*(x,t) <x| e^{-iHt} P_- |psi> with the
    restricted amplitudes themselves computed by quadrature over the
    initial half-lines.  ``coverage`` sets the truncation of each domain in
    units of the relevant packet width and must keep at least 8 widths.
    """
    from scipy.integrate import quad

    if coverage < 8.0:
        warnings.warn(
            "quadrature truncation below 8 packet widths; oracle accuracy "
            "is not guaranteed",
            stacklevel=2,
        )
    kernel = _propagator_factory(p)
    norm = (2.0 * math.pi * p.sigma**2) ** (-0.25)
    inv_four_sigma2 = 1.0 / (4.0 * p.sigma**2)
    ip0_over_hbar = 1j * p.p0 / p.hbar

    def psi0(y):
        return norm * cmath.exp(-y * y * inv_four_sigma2 + ip0_over_hbar * y)

    y_span = coverage * p.sigma

    def restricted(x, lo, hi):
        def f(y):
            return kernel(x, y) * psi0(y)

        re = quad(lambda y: f(y).real, lo, hi,
                  epsabs=abs_tol * 1e-1, epsrel=rel_tol * 1e-1,
                  limit=quad_limit)[0]
        im = quad(lambda y: f(y).imag, lo, hi,
                  epsabs=abs_tol * 1e-1, epsrel=rel_tol * 1e-1,
                  limit=quad_limit)[0]
        return complex(re, im)

    def integrand(x):
        minus = restricted(x, -y_span, 0.0)
        plus = restricted(x, 0.0, y_span)
        return ((minus + plus).conjugate() * minus).real

    # classical center and width of the evolved packet set the outer domain
    if p.frequency == 0.0:
        center = p.p0 * p.t / p.mass
    else:
        center = p.p0 * math.sin(p.frequency * p.t) / (p.mass * p.frequency)
    width = _evolved_width(p)
    hi = max(width, center + coverage * width)
    from scipy.integrate import IntegrationWarning

    with warnings.catch_warnings():
        warnings.simplefilter("error", category=IntegrationWarning)
        try:
            value = quad(integrand, 0.0, hi,
                         epsabs=abs_tol, epsrel=rel_tol, limit=quad_limit)[0]
        except IntegrationWarning as exc:
            raise OracleConvergenceError(
                f"oscillator oracle quadrature did not converge: {exc}"
            ) from exc
    return float(value)


@dataclass(frozen=True)
class ViolationScanReport:
    """Grid scan of the table entries over (p', omega t)."""

    pprimes: np.ndarray
    omegats: np.ndarray
    q_pp: np.ndarray
    q_pm: np.ndarray
    q_mp: np.ndarray
    q_mm: np.ndarray
    mean2: np.ndarray
    c12: np.ndarray
    min_value: float
    min_entry: str
    min_pprime: float
    min_omegat: float

    def curve(self, entry: str = "q_mp") -> np.ndarray:
        """The scanned entry as a (n_pprime, n_omegat) array."""
        return getattr(self, entry)


def violation_scan(pprimes, omegats, omega_t_s: float = 0.5,
                   singular_margin: float = 1e-6) -> ViolationScanReport:
    """Scan the closed-form table on a (p', omega t) product grid.

    ``omega_t_s`` fixes the state family (0.5 = coherent).  Grid points
    within ``singular_margin`` of a caustic (omega t = n pi) are rejected
    up front.
    """
    pprimes = np.atleast_1d(np.asarray(pprimes, dtype=float))
    omegats = np.atleast_1d(np.asarray(omegats, dtype=float))
    if np.any(np.abs(np.sin(omegats)) <= singular_margin):
        raise DomainError(
            "omega t grid contains points within the excluded neighborhood "
            "of a propagator caustic"
        )
    PP, WT = np.meshgrid(pprimes, omegats, indexing="ij")
    u = omega_t_s * (np.cos(WT) / np.sin(WT))
    q_pp, q_pm, q_mp, q_mm, mean2, c12 = kernels.sho_tables_from_u(
        PP.ravel(), u.ravel()
    )
    shape = PP.shape
    arrays = {
        "q_pp": q_pp.reshape(shape),
        "q_pm": q_pm.reshape(shape),
        "q_mp": q_mp.reshape(shape),
        "q_mm": q_mm.reshape(shape),
    }
    min_entry, min_value, min_idx = None, math.inf, (0, 0)
    for name, arr in arrays.items():
        idx = np.unravel_index(np.argmin(arr), shape)
        if arr[idx] < min_value:
            min_entry, min_value, min_idx = name, float(arr[idx]), idx
    return ViolationScanReport(
        pprimes=pprimes,
        omegats=omegats,
        mean2=mean2.reshape(shape),
        c12=c12.reshape(shape),
        min_value=min_value,
        min_entry=min_entry,
        min_pprime=float(pprimes[min_idx[0]]),
        min_omegat=float(omegats[min_idx[1]]),
        **arrays,
    )
