"""Special-function tests: frozen high-precision references, identities,
and quadrature cross-checks.

Reference values were computed offline with mpmath at 30+ significant
digits; scipy provides live independent checks (its erf handles complex
arguments through the Faddeeva package, and owens_t covers real
arguments).
"""

import cmath
import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from lgscan.errors import (
    ConvergenceError,
    DivergentIntegralError,
    DomainError,
    PathNearPoleError,
)
from lgscan.special import (
    erf_c,
    erfc_c,
    erfi_c,
    faddeeva_w,
    gaussian_halfline_integral,
    owen_t,
    owen_t_polyline,
)

# mpmath, 30 digits; points cover every dispatch region of the implementation
ERF_REFS = {
    (1.0 + 0.0j): 0.8427007929497149 + 0.0j,
    (0.5 + 0.5j): 0.6426129148548205 + 0.4578813944351922j,
    (3.2 + 1.1j): 0.9999906379816844 + 1.6899231735796753e-05j,
    (1.5 - 2.5j): 7.254688693477926 - 8.785967293370456j,
    (4.5 + 0.2j): 1.0000000000548641 + 1.9696479708812535e-10j,
    (0.3 + 5.8j): -10320714808977.385 - 35217714048061.39j,
    (2.9 + 2.8j): 1.0233999473951514 - 0.07533603554406437j,
    (0.05 + 4.4j): 13960763.239120714 + 30605799.856045105j,
    (7.3 + 6.1j): 1.0000000013147479 + 6.012369150221578e-09j,
    (0.0 + 3.0j): 1629.9946226015657j,
}

OWEN_REFS = [
    (1.0, 1.0 + 0.0j, 0.06674188216570097 + 0.0j),
    (0.8, 0.6 + 0.7j, 0.08752747307694417 + 0.049151157723616674j),
    (2.0, 0.7071067811865476j, 0.029671095801991964j),
    (0.5, -0.4 + 0.9j, -0.1141827410676385 + 0.1063667112094904j),
    (-1.7, 0.3 + 0.2j, 0.011385269035446496 + 0.006141849855292095j),
]

complex_box = st.builds(
    complex,
    st.floats(-3.5, 3.5, allow_nan=False),
    st.floats(-3.5, 3.5, allow_nan=False),
)


def test_erf_trivial_values():
    assert erf_c(0.0) == 0.0
    assert erfc_c(0.0) == 1.0
    assert erfi_c(0.0) == 0.0
    assert abs(erf_c(1.0) - 0.842700792949715) < 1e-14


@pytest.mark.parametrize("z,ref", sorted(ERF_REFS.items(), key=lambda kv: repr(kv)))
def test_erf_frozen_references(z, ref):
    got = erf_c(z)
    assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("z", sorted(ERF_REFS, key=repr))
def test_erf_matches_scipy_complex(z):
    assert abs(erf_c(z) - sp.erf(z)) <= 1e-12 * max(1.0, abs(sp.erf(z)))


def test_erf_real_axis_matches_math_erf():
    for x in np.linspace(-6.0, 6.0, 121):
        assert abs(erf_c(x).real - math.erf(x)) <= 1e-13
        assert abs(erf_c(x).imag) == 0.0


def test_erfi_real_axis_matches_scipy():
    for x in np.linspace(-4.0, 4.0, 81):
        assert abs(erfi_c(x) - sp.erfi(x)) <= 1e-12 * max(1.0, abs(sp.erfi(x)))


@given(z=complex_box)
@settings(max_examples=200, deadline=None)
def test_erf_identities(z):
    e = erf_c(z)
    assert abs(erfc_c(z) - (1.0 - e)) <= 1e-13 * max(1.0, abs(e))
    assert abs(erfi_c(z) - (-1j) * erf_c(1j * z)) <= 1e-13 * max(1.0, abs(e))
    assert abs(erf_c(-z) + e) <= 1e-15 * max(1.0, abs(e))


@given(z=complex_box)
@settings(max_examples=200, deadline=None)
def test_erf_schwarz_reflection(z):
    a = erf_c(z.conjugate())
    b = erf_c(z).conjugate()
    assert abs(a - b) <= 1e-13 * max(1.0, abs(b))


@given(z=complex_box)
@settings(max_examples=150, deadline=None)
def test_erf_against_scipy_random(z):
    ref = sp.erf(z)
    assert abs(erf_c(z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_erf_domain_errors():
    with pytest.raises(DomainError):
        erf_c(31.0)
    with pytest.raises(DomainError):
        erf_c(0.1 + 28.5j)  # value overflows double range
    with pytest.raises(DomainError):
        erf_c(complex(math.nan, 0.0))


def test_faddeeva_against_scipy():
    for z in [0.2 + 0.1j, 3.0 - 2.0j, -4.5 + 0.05j, 0.1 - 4.2j, 8.0 + 8.0j, 5.0 + 0.0j]:
        ref = sp.wofz(z)
        assert abs(faddeeva_w(z) - ref) <= 1e-12 * max(1.0, abs(ref))


# ---------------------------------------------------------------------------
# Owen T
# ---------------------------------------------------------------------------

def test_owen_zero_endpoint():
    for h in (0.0, 0.7, -3.0):
        assert owen_t(h, 0.0) == 0.0


@pytest.mark.parametrize("h,a,ref", OWEN_REFS)
def test_owen_frozen_references(h, a, ref):
    got = owen_t(h, a)
    assert abs(got - ref) <= 1e-12


def test_owen_even_in_h():
    a = 0.4 + 0.5j
    assert abs(owen_t(1.3, a) - owen_t(-1.3, a)) <= 1e-14


def test_owen_h_zero_is_atan():
    for a in (0.3 + 0.4j, -0.8 + 0.2j, 0.6j, 0.95):
        ref = cmath.atan(a) / (2.0 * math.pi)
        assert abs(owen_t(0.0, a) - ref) <= 1e-13


def test_owen_real_matches_scipy():
    for h in (0.1, 0.9, 2.3):
        for a in (0.2, 0.7, 1.0, 3.0):
            ref = sp.owens_t(h, a)
            got = owen_t(h, a)
            assert abs(got.real - ref) <= 1e-12
            assert abs(got.imag) <= 1e-13


def test_owen_path_independence():
    # straight segment vs the rectangular detour through Re(a)
    for h, a, _ in OWEN_REFS:
        if a.real == 0.0 or a.imag == 0.0:
            continue
        straight = owen_t(h, a)
        rectangular = owen_t_polyline(h, (0.0, complex(a.real, 0.0), a))
        assert abs(straight - rectangular) <= 1e-10


def test_owen_path_near_pole_rejected():
    with pytest.raises(PathNearPoleError):
        owen_t(1.0, 2.0j)  # straight path passes through +i
    with pytest.raises(PathNearPoleError):
        owen_t(0.3, 1.0000005j)
    with pytest.raises(PathNearPoleError):
        # second leg passes straight through -i
        owen_t_polyline(0.5, (0.0, 0.2 - 0.5j, -0.2 - 1.5j))


def test_owen_nonconvergence_reported():
    # long path, unreachable tolerance, almost no interval budget
    with pytest.raises(ConvergenceError):
        owen_t(1.0, 10.0 + 6.0j, abs_tol=1e-16, rel_tol=1e-16, max_intervals=3)


# ---------------------------------------------------------------------------
# half-line Gaussian integral
# ---------------------------------------------------------------------------

def test_halfline_b_zero_is_half_gaussian():
    for a in (1.0, 2.5, 0.3 + 0.2j):
        ref = 0.5 * cmath.sqrt(cmath.pi / a)
        assert abs(gaussian_halfline_integral(a, 0.0) - ref) <= 1e-14 * abs(ref)


def test_halfline_frozen_quadrature_value():
    # int_{-inf}^0 exp(-y^2 + 2iy) dy, mpmath quadrature
    ref = 0.3260246660866461 - 0.5380795069127684j
    assert abs(gaussian_halfline_integral(1.0, 2.0) - ref) <= 1e-10


@pytest.mark.parametrize("a,b", [(1.0, 2.0), (0.5 + 0.8j, -1.2 + 0.3j), (2.0 - 1.0j, 4.0)])
def test_halfline_matches_direct_quadrature(a, b):
    def f(y):
        return cmath.exp(-a * y * y + 1j * b * y)

    span = 14.0 / math.sqrt(complex(a).real)
    re = quad(lambda y: f(y).real, -span, 0.0, epsabs=1e-13, epsrel=1e-12, limit=400)[0]
    im = quad(lambda y: f(y).imag, -span, 0.0, epsabs=1e-13, epsrel=1e-12, limit=400)[0]
    assert abs(gaussian_halfline_integral(a, b) - complex(re, im)) <= 1e-10


@given(
    ar=st.floats(0.2, 3.0),
    ai=st.floats(-2.0, 2.0),
    br=st.floats(-4.0, 4.0),
    bi=st.floats(-2.0, 2.0),
)
@settings(max_examples=100, deadline=None)
def test_halfline_properties(ar, ai, br, bi):
    a = complex(ar, ai)
    b = complex(br, bi)
    # Schwarz reflection
    lhs = gaussian_halfline_integral(a.conjugate(), -b.conjugate())
    rhs = gaussian_halfline_integral(a, b).conjugate()
    assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(rhs))
    # the two half-lines assemble the full Gaussian
    full = gaussian_halfline_integral(a, b) + gaussian_halfline_integral(a, -b)
    ref = cmath.sqrt(cmath.pi / a) * cmath.exp(-b * b / (4.0 * a))
    assert abs(full - ref) <= 1e-12 * max(1.0, abs(ref))


def test_halfline_divergent_domain():
    with pytest.raises(DivergentIntegralError):
        gaussian_halfline_integral(-1.0, 0.0)
    with pytest.raises(DivergentIntegralError):
        gaussian_halfline_integral(1j, 0.5)
