# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Same surface and same algorithms as ``lgscan.kernels._pure``; see that
module for the method notes.  The parity test suite keeps the two aligned.
"""

import numpy as np

from lgscan.errors import ConvergenceError, DomainError

from libc.math cimport atan, cos, exp, fabs, sin, sqrt

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csqrt(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)

BACKEND = "compiled"

cdef double TWO_OVER_SQRT_PI = 1.1283791670955126
cdef double SQRT2 = 1.4142135623730951
cdef double INV_TWO_PI = 0.15915494309189535
cdef double EXP_ARG_MAX = 705.0
cdef double complex J = 1j
cdef double complex I_OVER_SQRT_PI = 0.5641895835477563j


# ---------------------------------------------------------------------------
# complex error function family
# ---------------------------------------------------------------------------

cdef double complex _erf_maclaurin(double complex z) except *:
    cdef double complex z2 = z * z
    cdef double complex term = z
    cdef double complex total = z
    cdef double complex inc
    cdef int n = 0
    while n < 400:
        n += 1
        term = term * (-z2) / n
        inc = term / (2 * n + 1)
        total = total + inc
        if cabs(inc) <= 1e-17 * cabs(total):
            return TWO_OVER_SQRT_PI * total
    raise ConvergenceError("erf Maclaurin series did not converge")


cdef double complex _erf_scaled(double complex z) except *:
    cdef double complex z2 = z * z
    cdef double complex term = 1.0
    cdef double complex total = 1.0
    cdef int n = 0
    while n < 400:
        n += 1
        term = term * 2.0 * z2 / (2 * n + 1)
        total = total + term
        if cabs(term) <= 1e-17 * cabs(total):
            return TWO_OVER_SQRT_PI * z * cexp(-z2) * total
    raise ConvergenceError("erf scaled series did not converge")


cdef double complex _w_cf(double complex z) noexcept nogil:
    cdef double r2 = creal(z) * creal(z) + cimag(z) * cimag(z)
    cdef int depth = 240 if r2 < 42.25 else 96
    cdef double complex f = 0.0
    cdef int k
    for k in range(depth, 0, -1):
        f = (0.5 * k) / (z - f)
    return I_OVER_SQRT_PI / (z - f)


cdef double complex _erf_right(double complex z) except *:
    cdef double x = creal(z)
    cdef double y = cimag(z)
    cdef double r2 = x * x + y * y
    cdef double rez2 = x * x - y * y
    if r2 <= 16.0:
        if r2 <= 8.0 + fabs(rez2):
            return _erf_scaled(z) if rez2 >= 0.0 else _erf_maclaurin(z)
        return 1.0 - cexp(-z * z) * _w_cf(J * z)
    if x <= 0.5 and r2 < 36.0:
        return _erf_maclaurin(z)
    if -rez2 > EXP_ARG_MAX:
        raise DomainError("erf overflows double precision for this argument")
    return 1.0 - cexp(-z * z) * _w_cf(J * z)


cdef double complex _erf_any(double complex z) except *:
    if creal(z) < 0.0:
        return -_erf_right(-z)
    return _erf_right(z)


cdef double complex _w_upper(double complex z) except *:
    cdef double r2 = creal(z) * creal(z) + cimag(z) * cimag(z)
    if r2 >= 16.0 and (cimag(z) >= 0.5 or r2 >= 36.0):
        return _w_cf(z)
    return cexp(-z * z) * (1.0 - _erf_right(-J * z))


cdef double complex _w_any(double complex z) except *:
    cdef double complex zz
    if cimag(z) < 0.0:
        zz = z * z
        if -creal(zz) > EXP_ARG_MAX:
            raise DomainError(
                "faddeeva_w overflows double precision for this argument"
            )
        return 2.0 * cexp(-zz) - _w_upper(-z)
    return _w_upper(z)


def erf_c(z):
    """Error function of a complex argument."""
    return complex(_erf_any(complex(z)))


def faddeeva_w(z):
    """Faddeeva function w(z) = exp(-z^2) erfc(-iz) of a complex argument."""
    return complex(_w_any(complex(z)))


# ---------------------------------------------------------------------------
# adaptive Gauss-Kronrod quadrature for the Owen T endpoint integral
# ---------------------------------------------------------------------------

cdef double[15] XGK
cdef double[15] WGK
cdef double[7] WG
XGK = [
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
]
WGK = [
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
]
WG = [
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
]


cdef inline double complex _owen_integrand(double h2, double complex z) noexcept nogil:
    cdef double complex d = 1.0 + z * z
    return cexp(-0.5 * h2 * d) / d


cdef void _gk15_segment(double h2, double complex za, double complex zb,
                        double complex* val, double* err) noexcept nogil:
    cdef double complex c = 0.5 * (za + zb)
    cdef double complex half = 0.5 * (zb - za)
    cdef double complex k15 = 0.0
    cdef double complex g7 = 0.0
    cdef double complex f
    cdef int i
    for i in range(15):
        f = _owen_integrand(h2, c + XGK[i] * half)
        k15 = k15 + WGK[i] * f
        if i % 2 == 1:
            g7 = g7 + WG[i // 2] * f
    val[0] = half * k15 * INV_TWO_PI
    err[0] = cabs(half) * cabs(k15 - g7) * INV_TWO_PI


def owen_t_polyline(h, vertices, double abs_tol=1e-12, double rel_tol=1e-10,
                    int max_intervals=10000):
    """Owen T integral along a polyline path; see the pure twin for docs."""
    pts = [complex(v) for v in vertices]
    if len(pts) < 2:
        raise DomainError("polyline needs at least two vertices")

    cdef double h2 = float(h) * float(h)
    cdef int cap = max_intervals + 2
    cdef double complex[::1] seg_a = np.empty(cap, dtype=np.complex128)
    cdef double complex[::1] seg_b = np.empty(cap, dtype=np.complex128)
    cdef double complex[::1] seg_val = np.empty(cap, dtype=np.complex128)
    cdef double[::1] seg_err = np.empty(cap, dtype=np.float64)

    cdef int n = 0
    cdef double complex total = 0.0
    cdef double toterr = 0.0
    cdef double complex val, v1, v2, za, zb, zm
    cdef double err, e1, e2
    cdef int i, worst

    for k in range(len(pts) - 1):
        za = pts[k]
        zb = pts[k + 1]
        if za == zb:
            continue
        _gk15_segment(h2, za, zb, &val, &err)
        seg_a[n] = za
        seg_b[n] = zb
        seg_val[n] = val
        seg_err[n] = err
        n += 1
        total = total + val
        toterr += err

    while toterr > max(abs_tol, rel_tol * cabs(total)) and n > 0:
        if n + 1 >= cap:
            raise ConvergenceError(
                f"Owen T quadrature exceeded {max_intervals} intervals"
            )
        worst = 0
        for i in range(1, n):
            if seg_err[i] > seg_err[worst]:
                worst = i
        za = seg_a[worst]
        zb = seg_b[worst]
        val = seg_val[worst]
        err = seg_err[worst]
        zm = 0.5 * (za + zb)
        _gk15_segment(h2, za, zm, &v1, &e1)
        _gk15_segment(h2, zm, zb, &v2, &e2)
        total = total + v1 + v2 - val
        toterr += e1 + e2 - err
        seg_a[worst] = za
        seg_b[worst] = zm
        seg_val[worst] = v1
        seg_err[worst] = e1
        seg_a[n] = zm
        seg_b[n] = zb
        seg_val[n] = v2
        seg_err[n] = e2
        n += 1
    return complex(total)


# ---------------------------------------------------------------------------
# slit-system grid kernels (per-|N_t|^2 units)
# ---------------------------------------------------------------------------

def double_slit_grid(phi, Y):
    """Quasi-probability densities on aligned (phi, Y) arrays."""
    cdef double[::1] p = np.ascontiguousarray(phi, dtype=np.float64)
    cdef double[::1] y = np.ascontiguousarray(Y, dtype=np.float64)
    if p.shape[0] != y.shape[0]:
        raise DomainError("phi and Y must be aligned")
    cdef Py_ssize_t n = p.shape[0]
    q_plus_arr = np.empty(n)
    q_minus_arr = np.empty(n)
    p2_arr = np.empty(n)
    inter_arr = np.empty(n)
    cdef double[::1] q_plus = q_plus_arr
    cdef double[::1] q_minus = q_minus_arr
    cdef double[::1] p2 = p2_arr
    cdef double[::1] inter = inter_arr
    cdef Py_ssize_t i
    cdef double c2, t
    for i in range(n):
        c2 = cos(2.0 * p[i])
        t = sin(2.0 * p[i]) * cos(y[i])
        q_plus[i] = 0.5 * (1.0 + c2 + t)
        q_minus[i] = 0.5 * (1.0 - c2 + t)
        p2[i] = q_plus[i] + q_minus[i]
        inter[i] = t
    return q_plus_arr, q_minus_arr, p2_arr, inter_arr


def triple_slit_grid(theta, phi, xplus, xminus):
    """Quasi-probability densities and interference terms on aligned arrays."""
    cdef double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef double[::1] ph = np.ascontiguousarray(phi, dtype=np.float64)
    cdef double[::1] xp = np.ascontiguousarray(xplus, dtype=np.float64)
    cdef double[::1] xm = np.ascontiguousarray(xminus, dtype=np.float64)
    cdef Py_ssize_t n = th.shape[0]
    if ph.shape[0] != n or xp.shape[0] != n or xm.shape[0] != n:
        raise DomainError("theta, phi, xplus, xminus must be aligned")
    out = tuple(np.empty(n) for _ in range(8))
    cdef double[::1] q_plus = out[0]
    cdef double[::1] q_minus = out[1]
    cdef double[::1] q_zero = out[2]
    cdef double[::1] p2 = out[3]
    cdef double[::1] i_0p = out[4]
    cdef double[::1] i_m0 = out[5]
    cdef double[::1] i_mp = out[6]
    cdef double[::1] vn_plus = out[7]
    cdef Py_ssize_t i
    cdef double st, ct, sp, cp, a, b, c
    for i in range(n):
        st = sin(th[i]); ct = cos(th[i])
        sp = sin(ph[i]); cp = cos(ph[i])
        a = st * ct * cp * cos(xp[i])
        b = st * ct * sp * cos(xm[i])
        c = st * st * cp * sp * cos(xm[i] - xp[i])
        i_0p[i] = a; i_m0[i] = b; i_mp[i] = c
        q_plus[i] = st * st * cp * cp + a + c
        q_minus[i] = st * st * sp * sp + b + c
        q_zero[i] = ct * ct + a + b
        p2[i] = 1.0 + 2.0 * (a + b + c)
        vn_plus[i] = q_plus[i] - b
    return out


def nsit_theta_grid(phi, xplus, xminus, double eps=1e-12):
    """Mixing angle zeroing the summed interference terms (NaN on singular)."""
    cdef double[::1] ph = np.ascontiguousarray(phi, dtype=np.float64)
    cdef double[::1] xp = np.ascontiguousarray(xplus, dtype=np.float64)
    cdef double[::1] xm = np.ascontiguousarray(xminus, dtype=np.float64)
    cdef Py_ssize_t n = ph.shape[0]
    if xp.shape[0] != n or xm.shape[0] != n:
        raise DomainError("phi, xplus, xminus must be aligned")
    theta_arr = np.empty(n)
    cdef double[::1] theta = theta_arr
    cdef Py_ssize_t i
    cdef double sp, cp, den, num
    nan = float("nan")
    for i in range(n):
        sp = sin(ph[i]); cp = cos(ph[i])
        den = sp * cp * cos(xm[i] - xp[i])
        if fabs(den) <= eps:
            theta[i] = nan
        else:
            num = -(cp * cos(xp[i]) + sp * cos(xm[i]))
            theta[i] = atan(num / den)
    return theta_arr


# ---------------------------------------------------------------------------
# oscillator grid kernel
# ---------------------------------------------------------------------------

def sho_tables_from_u(pprime, u, double abs_tol=1e-12, double rel_tol=1e-10,
                      int max_intervals=10000):
    """Two-time tables on aligned (p', u) arrays; see the pure twin for docs."""
    cdef double[::1] pp = np.ascontiguousarray(pprime, dtype=np.float64)
    cdef double[::1] uu = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t n = pp.shape[0]
    if uu.shape[0] != n:
        raise DomainError("pprime and u must be aligned")
    out = tuple(np.empty(n) for _ in range(6))
    cdef double[::1] q_pp = out[0]
    cdef double[::1] q_pm = out[1]
    cdef double[::1] q_mp = out[2]
    cdef double[::1] q_mm = out[3]
    cdef double[::1] mean2 = out[4]
    cdef double[::1] c12 = out[5]
    cdef Py_ssize_t i
    cdef double ui, g, re_t, m2, c
    cdef double complex a_t
    for i in range(n):
        ui = uu[i]
        g = SQRT2 * pp[i] / sqrt(1.0 + 4.0 * ui * ui)
        a_t = (J / SQRT2) * csqrt(1.0 + 2.0 * J * ui)
        re_t = creal(owen_t_polyline(
            SQRT2 * g, (0.0j, complex(a_t)), abs_tol, rel_tol, max_intervals
        ))
        m2 = creal(_erf_right(g if g >= 0.0 else -g))
        if g < 0.0:
            m2 = -m2
        c = -4.0 * re_t
        mean2[i] = m2
        c12[i] = c
        q_pp[i] = 0.25 * (1.0 + m2 + c)
        q_pm[i] = 0.25 * (1.0 - m2 - c)
        q_mp[i] = 0.25 * (1.0 + m2 - c)
        q_mm[i] = 0.25 * (1.0 - m2 + c)
    return out
