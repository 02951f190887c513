"""Complex error-function family and the Owen T-function.

These are the numerical primitives behind the oscillator closed forms: the
two-time table there is built from erf of a real argument and the real part
of an Owen T-function continued to a complex endpoint,

    T[h, a] = (1/2pi) int_0^a exp(-h^2 (1+x^2)/2) / (1+x^2) dx,

integrated along the straight segment from 0 to ``a`` in the complex plane.
The integrand has poles at x = +-i; paths passing within ``POLE_CLEARANCE``
of either pole are rejected rather than deformed.

Everything here is a stateless pure function; evaluation is delegated to
:mod:`lgscan.kernels` (compiled when available).
"""

from __future__ import annotations

import cmath
import math

from . import kernels
from .errors import DivergentIntegralError, DomainError, PathNearPoleError

__all__ = [
    "erf_c",
    "erfc_c",
    "erfi_c",
    "faddeeva_w",
    "owen_t",
    "owen_t_polyline",
    "gaussian_halfline_integral",
    "POLE_CLEARANCE",
    "ERF_RADIUS_MAX",
]

#: minimum allowed distance between an Owen T path and the poles at +-i
POLE_CLEARANCE = 1e-6

#: |z| beyond which the unscaled erf family is refused (scaled variants
#: would be required; the needed domain ends well before this)
ERF_RADIUS_MAX = 30.0


def _check_erf_domain(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("erf family requires finite arguments")
    if abs(z) >= ERF_RADIUS_MAX:
        raise DomainError(
            f"|z| >= {ERF_RADIUS_MAX:g} is outside the supported erf domain"
        )
    return z


def erf_c(z: complex) -> complex:
    """Error function of a complex argument (|z| < 30)."""
    return kernels.erf_c(_check_erf_domain(z))


def erfc_c(z: complex) -> complex:
    """Complementary error function, computed as 1 - erf(z)."""
    return 1.0 - erf_c(z)


def erfi_c(z: complex) -> complex:
    """Imaginary error function erfi(z) = -i erf(iz)."""
    z = _check_erf_domain(z)
    return -1j * kernels.erf_c(1j * z)


def faddeeva_w(z: complex) -> complex:
    """Faddeeva function w(z) = exp(-z^2) erfc(-iz)."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("faddeeva_w requires a finite argument")
    return kernels.faddeeva_w(z)


def _segment_pole_distance(za: complex, zb: complex) -> float:
    """Distance from the segment [za, zb] to the nearer of the poles +-i."""
    d = zb - za
    dd = (d * d.conjugate()).real
    best = math.inf
    for pole in (1j, -1j):
        if dd == 0.0:
            best = min(best, abs(za - pole))
            continue
        t = ((pole - za) * d.conjugate()).real / dd
        t = min(1.0, max(0.0, t))
        best = min(best, abs(za + t * d - pole))
    return best


def owen_t_polyline(
    h: float,
    vertices,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-10,
    max_intervals: int = 10_000,
) -> complex:
    """Owen T integral along an explicit polyline path.

    Exposed so that path independence can be checked against homotopic
    alternatives to the straight segment; ``owen_t`` is the straight-path
    special case.
    """
    pts = [complex(v) for v in vertices]
    if len(pts) < 2:
        raise DomainError("polyline needs at least two vertices")
    for za, zb in zip(pts[:-1], pts[1:]):
        if _segment_pole_distance(za, zb) < POLE_CLEARANCE:
            raise PathNearPoleError(
                "integration path passes within "
                f"{POLE_CLEARANCE:g} of a pole at +-i"
            )
    return kernels.owen_t_polyline(float(h), pts, abs_tol, rel_tol, max_intervals)


def owen_t(
    h: float,
    a: complex,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-10,
    max_intervals: int = 10_000,
) -> complex:
    """Owen T-function T[h, a] with complex endpoint ``a``.

    For real ``a`` this is the classical Owen T-function; for complex ``a``
    it is the straight-path continuation of the defining integral.
    """
    a = complex(a)
    if a == 0.0:
        return 0.0 + 0.0j
    return owen_t_polyline(h, (0.0j, a), abs_tol, rel_tol, max_intervals)


def gaussian_halfline_integral(a: complex, b: complex) -> complex:
    """Half-line Gaussian integral int_{-inf}^0 exp(-a y^2 + i b y) dy.

    Requires Re(a) > 0.  Closed form: (1/2) sqrt(pi/a) exp(-b^2/4a)
    (1 - i erfi(b/(2 sqrt a))) with the Re(sqrt a) > 0 branch, evaluated
    through the Faddeeva function so the exp(-b^2/4a) factor never
    overflows against the erfi growth:

        exp(-w^2) (1 - i erfi(w)) = exp(-w^2) erfc(i w) = w_F(-w).
    """
    a = complex(a)
    b = complex(b)
    if not (a.real > 0.0):
        raise DivergentIntegralError(
            "half-line Gaussian integral requires Re(a) > 0"
        )
    sqrt_a = cmath.sqrt(a)  # principal: Re > 0 because Re(a) > 0
    w = b / (2.0 * sqrt_a)
    return 0.5 * cmath.sqrt(cmath.pi / a) * faddeeva_w(-w)
