"""Pure-Python numerical kernels (fallback backend).

The compiled extension ``lgscan.kernels._core`` implements the same surface
with the same algorithms; this module is what you get when the extension is
unavailable (or when ``LGSCAN_PURE=1``).  Keep the two in sync: the parity
test suite compares them point by point.

Algorithms
----------
Complex error function: power series inside |z| <= 4 -- the Maclaurin form
near the imaginary axis and the exp(-z^2)-scaled form near the real axis,
whichever is free of catastrophic cancellation -- and the Laplace continued
fraction for the Faddeeva function w(z) outside.  The diagonal ring
(|z| <= 4 but both series ill-conditioned) is routed to the continued
fraction, which converges to machine precision there for healthy Im(z); a
thin band along the imaginary axis where the continued fraction is weak
falls back to the (cancellation-free) Maclaurin series.  Region boundaries
were tuned against a 40-digit reference; the plain radius-4 split loses
five digits in the diagonal directions.

Owen T endpoint integral: globally adaptive Gauss-Kronrod 7/15 rule over
straight segments in the complex plane, bisecting the segment with the
largest |K15 - G7| estimate.

Closed-form grid kernels for the slit systems are plain vectorized numpy;
the oscillator grid loops over points because each needs its own adaptive
Owen T quadrature.
"""

from __future__ import annotations

import cmath
import heapq
import math

import numpy as np

from ..errors import ConvergenceError, DomainError

BACKEND = "pure"

_TWO_OVER_SQRT_PI = 1.1283791670955126
_I_OVER_SQRT_PI = 0.5641895835477563j
_INV_TWO_PI = 0.15915494309189535
_SQRT2 = math.sqrt(2.0)
# largest x with exp(x) finite in double precision, with margin
_EXP_ARG_MAX = 705.0


# ---------------------------------------------------------------------------
# complex error function family
# ---------------------------------------------------------------------------

def _erf_maclaurin(z: complex) -> complex:
    # erf(z) = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1))
    # cancellation-free near the imaginary axis (Re(z^2) <= 0)
    z2 = z * z
    term = z
    total = z
    n = 0
    while n < 400:
        n += 1
        term *= -z2 / n
        inc = term / (2 * n + 1)
        total += inc
        if abs(inc) <= 1e-17 * abs(total):
            return _TWO_OVER_SQRT_PI * total
    raise ConvergenceError("erf Maclaurin series did not converge")


def _erf_scaled(z: complex) -> complex:
    # erf(z) = 2/sqrt(pi) z exp(-z^2) sum_n (2 z^2)^n / (2n+1)!!
    # cancellation-free near the real axis (Re(z^2) >= 0)
    z2 = z * z
    term = 1.0 + 0.0j
    total = term
    n = 0
    while n < 400:
        n += 1
        term *= 2.0 * z2 / (2 * n + 1)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return _TWO_OVER_SQRT_PI * z * cmath.exp(-z2) * total
    raise ConvergenceError("erf scaled series did not converge")


def _w_cf(z: complex) -> complex:
    # Laplace continued fraction for w(z), valid for Im(z) >= 0:
    #   w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))
    # Depth 240 reaches machine precision down to |z| ~ 2.5 when Im(z) is
    # not tiny; cheaper depths suffice far out.
    r2 = z.real * z.real + z.imag * z.imag
    depth = 240 if r2 < 42.25 else 96
    f = 0.0 + 0.0j
    for k in range(depth, 0, -1):
        f = (0.5 * k) / (z - f)
    return _I_OVER_SQRT_PI / (z - f)


def _erf_right(z: complex) -> complex:
    # erf on the closed right half plane Re(z) >= 0
    x, y = z.real, z.imag
    r2 = x * x + y * y
    rez2 = x * x - y * y
    if r2 <= 16.0:
        if r2 <= 8.0 + abs(rez2):
            # wedges around both axes: one of the series is well conditioned
            return _erf_scaled(z) if rez2 >= 0.0 else _erf_maclaurin(z)
        # diagonal ring: hand off to the continued fraction, which is strong
        # here (Im(iz) = Re(z) >= 0.26 |z|)
        return 1.0 - cmath.exp(-z * z) * _w_cf(1j * z)
    if x <= 0.5 and r2 < 36.0:
        # near-imaginary band where the continued fraction for w(iz) sits on
        # its real axis and misses the exponentially small component
        return _erf_maclaurin(z)
    if -rez2 > _EXP_ARG_MAX:
        raise DomainError("erf overflows double precision for this argument")
    return 1.0 - cmath.exp(-z * z) * _w_cf(1j * z)


def erf_c(z: complex) -> complex:
    """Error function of a complex argument."""
    z = complex(z)
    if z.real < 0.0:
        return -_erf_right(-z)
    return _erf_right(z)


def faddeeva_w(z: complex) -> complex:
    """Faddeeva function w(z) = exp(-z^2) erfc(-iz) of a complex argument."""
    z = complex(z)
    if z.imag < 0.0:
        zz = z * z
        if -zz.real > _EXP_ARG_MAX:
            raise DomainError("faddeeva_w overflows double precision for this argument")
        return 2.0 * cmath.exp(-zz) - _w_upper(-z)
    return _w_upper(z)


def _w_upper(z: complex) -> complex:
    # w on the closed upper half plane
    r2 = z.real * z.real + z.imag * z.imag
    if r2 >= 16.0 and (z.imag >= 0.5 or r2 >= 36.0):
        return _w_cf(z)
    # -iz lands in the right half plane, so _erf_right applies directly and
    # any continued fraction it triggers is evaluated back at z (upper half):
    # no recursion.
    return cmath.exp(-z * z) * (1.0 - _erf_right(-1j * z))


# ---------------------------------------------------------------------------
# adaptive Gauss-Kronrod quadrature for the Owen T endpoint integral
# ---------------------------------------------------------------------------

# 15-point Kronrod abscissae on [-1, 1] and weights; odd indices carry the
# embedded 7-point Gauss rule (QUADPACK values).
_XGK = (
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
)
_WGK = (
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
)
_WG = (
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
)


def _owen_integrand(h2: float, z: complex) -> complex:
    d = 1.0 + z * z
    return cmath.exp(-0.5 * h2 * d) / d


def _gk15_segment(h2: float, za: complex, zb: complex) -> tuple[complex, float]:
    c = 0.5 * (za + zb)
    half = 0.5 * (zb - za)
    k15 = 0.0 + 0.0j
    g7 = 0.0 + 0.0j
    for i in range(15):
        f = _owen_integrand(h2, c + _XGK[i] * half)
        k15 += _WGK[i] * f
        if i % 2 == 1:
            g7 += _WG[i // 2] * f
    val = half * k15 * _INV_TWO_PI
    err = abs(half) * abs(k15 - g7) * _INV_TWO_PI
    return val, err


def owen_t_polyline(
    h: float,
    vertices,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-10,
    max_intervals: int = 10_000,
) -> complex:
    """Owen T integral (1/2pi) int exp(-h^2(1+z^2)/2)/(1+z^2) dz along a polyline.

    ``vertices`` is the ordered list of path vertices starting at the lower
    endpoint; the classical T[h, a] is the straight path ``(0, a)``.  The
    caller is responsible for keeping the path away from the poles at +-i.
    """
    h2 = float(h) * float(h)
    pts = [complex(v) for v in vertices]
    if len(pts) < 2:
        raise DomainError("polyline needs at least two vertices")
    heap = []
    serial = 0
    total = 0.0 + 0.0j
    toterr = 0.0
    for za, zb in zip(pts[:-1], pts[1:]):
        if za == zb:
            continue
        val, err = _gk15_segment(h2, za, zb)
        total += val
        toterr += err
        heapq.heappush(heap, (-err, serial, za, zb, val))
        serial += 1
    while toterr > max(abs_tol, rel_tol * abs(total)) and heap:
        if serial >= max_intervals:
            raise ConvergenceError(
                f"Owen T quadrature exceeded {max_intervals} intervals"
            )
        nerr, _, za, zb, val = heapq.heappop(heap)
        zm = 0.5 * (za + zb)
        v1, e1 = _gk15_segment(h2, za, zm)
        v2, e2 = _gk15_segment(h2, zm, zb)
        total += v1 + v2 - val
        toterr += e1 + e2 + nerr  # nerr is negative
        heapq.heappush(heap, (-e1, serial, za, zm, v1))
        serial += 1
        heapq.heappush(heap, (-e2, serial, zm, zb, v2))
        serial += 1
    return total


# ---------------------------------------------------------------------------
# slit-system grid kernels (vectorized closed forms, per-|N_t|^2 units)
# ---------------------------------------------------------------------------

def double_slit_grid(phi, Y):
    """Quasi-probability densities on aligned (phi, Y) arrays.

    Returns ``(q_plus, q_minus, p2, interference)`` where ``interference``
    is sin(2 phi) cos(Y), the term whose negativity marks destructive
    interference.  ``p2`` is computed as ``q_plus + q_minus`` so the sum
    rule holds exactly.
    """
    phi = np.asarray(phi, dtype=float)
    Y = np.asarray(Y, dtype=float)
    c2 = np.cos(2.0 * phi)
    interference = np.sin(2.0 * phi) * np.cos(Y)
    q_plus = 0.5 * (1.0 + c2 + interference)
    q_minus = 0.5 * (1.0 - c2 + interference)
    p2 = q_plus + q_minus
    return q_plus, q_minus, p2, interference


def triple_slit_grid(theta, phi, xplus, xminus):
    """Quasi-probability densities and interference terms on aligned arrays.

    Returns ``(q_plus, q_minus, q_zero, p2, i_0p, i_m0, i_mp, vn_plus)``.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    xplus = np.asarray(xplus, dtype=float)
    xminus = np.asarray(xminus, dtype=float)
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    i_0p = st * ct * cp * np.cos(xplus)
    i_m0 = st * ct * sp * np.cos(xminus)
    i_mp = st * st * cp * sp * np.cos(xminus - xplus)
    q_plus = st * st * cp * cp + i_0p + i_mp
    q_minus = st * st * sp * sp + i_m0 + i_mp
    q_zero = ct * ct + i_0p + i_m0
    p2 = 1.0 + 2.0 * (i_0p + i_m0 + i_mp)
    vn_plus = q_plus - i_m0
    return q_plus, q_minus, q_zero, p2, i_0p, i_m0, i_mp, vn_plus


def nsit_theta_grid(phi, xplus, xminus, eps: float = 1e-12):
    """First-time mixing angle that zeroes the summed interference terms.

    tan(theta) = -(cos phi cos X+ + sin phi cos X-) / (sin phi cos phi cos X)
    with X = X- - X+.  Points where |denominator| <= eps come back as NaN.
    """
    phi = np.asarray(phi, dtype=float)
    xplus = np.asarray(xplus, dtype=float)
    xminus = np.asarray(xminus, dtype=float)
    sp, cp = np.sin(phi), np.cos(phi)
    den = sp * cp * np.cos(xminus - xplus)
    num = -(cp * np.cos(xplus) + sp * np.cos(xminus))
    ok = np.abs(den) > eps
    safe = np.where(ok, den, 1.0)
    return np.where(ok, np.arctan(num / safe), np.nan)


# ---------------------------------------------------------------------------
# oscillator grid kernel
# ---------------------------------------------------------------------------

def sho_tables_from_u(
    pprime,
    u,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-10,
    max_intervals: int = 10_000,
):
    """Two-time tables for the oscillator on aligned (p', u) arrays.

    ``u = omega * t_s * cot(omega t)`` for the oscillator (``t_s/t`` for the
    free particle).  Returns ``(q_pp, q_pm, q_mp, q_mm, mean2, c12)`` where
    the table is q(s1, s2) = (1 + s2*mean2 + s1*s2*c12)/4 with

        mean2 = erf(sqrt(2) p' / sqrt(1 + 4 u^2)),
        c12   = -4 Re T[sqrt(2)*g, (i/sqrt(2)) sqrt(1 + 2iu)].
    """
    pprime = np.asarray(pprime, dtype=float)
    u = np.asarray(u, dtype=float)
    n = pprime.shape[0]
    out = tuple(np.empty(n) for _ in range(6))
    q_pp, q_pm, q_mp, q_mm, mean2, c12 = out
    for i in range(n):
        ui = float(u[i])
        g = _SQRT2 * float(pprime[i]) / math.sqrt(1.0 + 4.0 * ui * ui)
        a_t = (1j / _SQRT2) * cmath.sqrt(1.0 + 2.0j * ui)
        re_t = owen_t_polyline(
            _SQRT2 * g, (0.0j, a_t), abs_tol, rel_tol, max_intervals
        ).real
        m2 = erf_c(complex(g)).real
        c = -4.0 * re_t
        mean2[i] = m2
        c12[i] = c
        q_pp[i] = 0.25 * (1.0 + m2 + c)
        q_pm[i] = 0.25 * (1.0 - m2 - c)
        q_mp[i] = 0.25 * (1.0 + m2 - c)
        q_mm[i] = 0.25 * (1.0 - m2 + c)
    return out
