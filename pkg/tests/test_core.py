"""Tests for the system-agnostic LG machinery."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgscan.core import (
    LUDERS_BOUND,
    Dichotomic,
    QuasiProbTable,
    TwoTimeMoments,
    indirect_quasi,
    lg2_check,
    lg3_check,
    moments_from_quasi,
    nsit_check,
    quasi_decomposition_check,
    quasi_from_moments,
)
from lgscan.double_slit import ScreenPhaseDouble, SlitStateDouble, densities
from lgscan.errors import DomainError
from lgscan.oscillator import OscillatorParams, quasi_table
from lgscan.triple_slit import (
    ScreenPhaseTriple,
    SlitStateTriple,
    interference_terms,
    nsit_theta_solution,
    quasi_densities,
)

moments_floats = st.floats(-1.0, 1.0, allow_nan=False)


def test_dichotomic_validation():
    assert Dichotomic(1).value == 1
    assert Dichotomic(-1).value == -1
    with pytest.raises(DomainError):
        Dichotomic(0)


def test_quasi_from_moments_trivial():
    t = quasi_from_moments(TwoTimeMoments(0.0, 0.0, 0.0))
    np.testing.assert_array_equal(t.q, 0.25 * np.ones((2, 2)))
    t = quasi_from_moments(TwoTimeMoments(1.0, 1.0, 1.0))
    assert t.entry(1, 1) == 1.0
    assert t.entry(1, -1) == 0.0
    assert t.entry(-1, 1) == 0.0
    assert t.entry(-1, -1) == 0.0


def test_quasi_from_moments_rejects_out_of_range():
    with pytest.raises(DomainError):
        quasi_from_moments(TwoTimeMoments(1.2, 0.0, 0.0))
    with pytest.raises(DomainError):
        TwoTimeMoments(0.0, -1.0001, 0.0)


@given(m1=moments_floats, m2=moments_floats, c=moments_floats)
@settings(max_examples=300, deadline=None)
def test_quasi_from_moments_sums_to_one_exactly(m1, m2, c):
    t = quasi_from_moments(TwoTimeMoments(m1, m2, c))
    assert math.fsum(t.q.ravel()) == 1.0


@given(m1=moments_floats, m2=moments_floats, c=moments_floats)
@settings(max_examples=300, deadline=None)
def test_moment_round_trip(m1, m2, c):
    m = TwoTimeMoments(m1, m2, c)
    back = moments_from_quasi(quasi_from_moments(m))
    assert abs(back.mean1 - m1) <= 1e-14
    assert abs(back.mean2 - m2) <= 1e-14
    assert abs(back.correlator - c) <= 1e-14


def test_moments_from_quasi_validation():
    uniform = quasi_from_moments(TwoTimeMoments(0.0, 0.0, 0.0))
    m = moments_from_quasi(uniform)
    assert (m.mean1, m.mean2, m.correlator) == (0.0, 0.0, 0.0)
    bad = QuasiProbTable((1, -1), ("a", "b", "c"), np.full((2, 3), 1 / 6))
    with pytest.raises(DomainError):
        moments_from_quasi(bad)
    scaled = QuasiProbTable((1, -1), (1, -1), np.full((2, 2), 0.3),
                            norm_units="per_Nt2")
    with pytest.raises(DomainError):
        moments_from_quasi(scaled)


def test_oscillator_table_mean1_vanishes():
    p = OscillatorParams.from_dimensionless(-1.0, math.pi / 2.0)
    m = moments_from_quasi(quasi_table(p))
    assert abs(m.mean1) <= 1e-15


def test_cross_module_moments_match_oscillator():
    # rebuilding the oscillator table from its moments must reproduce it
    p = OscillatorParams.from_dimensionless(-1.0, math.pi / 2.0)
    direct = quasi_table(p)
    m = moments_from_quasi(direct)
    rebuilt = quasi_from_moments(m)
    np.testing.assert_allclose(rebuilt.q, direct.q, rtol=0, atol=1e-13)
    # at this phase the correlator vanishes and <Q2> = erf(-sqrt(2))
    assert abs(m.mean1) <= 1e-15
    assert abs(m.mean2 - math.erf(-math.sqrt(2.0))) <= 1e-13
    assert abs(m.correlator) <= 1e-13


def test_lg2_uniform_satisfied():
    r = lg2_check(quasi_from_moments(TwoTimeMoments(0.0, 0.0, 0.0)))
    assert r.satisfied and r.min_entry == 0.25


def test_lg2_double_slit_golden_violation():
    d = densities(SlitStateDouble(5 * math.pi / 8, 0.0), ScreenPhaseDouble(0.0))
    table = QuasiProbTable((1, -1), ("x0",), [[d.q_plus], [d.q_minus]],
                           norm_units="per_Nt2")
    r = lg2_check(table)
    assert not r.satisfied
    assert abs(r.min_entry - (1 - math.sqrt(2)) / 2) <= 1e-15
    assert r.argmin == (1, "x0")


def test_lg2_sho_scan_minimum():
    p = OscillatorParams.from_dimensionless(-1.0, 0.680812174333)
    r = lg2_check(quasi_table(p))
    assert not r.satisfied
    assert abs(r.min_entry - (-0.0111934390445)) <= 1e-9
    assert r.argmin == (-1, 1)


def test_lg2_argmin_tie_break_is_lexicographic():
    q = np.array([[0.1, 0.4], [0.1, 0.4]])
    t = QuasiProbTable((1, -1), (1, -1), q)
    assert lg2_check(t).argmin == (-1, 1)  # labels sorted by repr: -1 < 1


def test_lg3_examples():
    r = lg3_check(0.0, 0.0, 0.0)
    assert r.satisfied and r.worst == 1.0
    r = lg3_check(-0.5, -0.5, -0.5)
    assert not r.satisfied and abs(r.worst - (-0.5)) <= 1e-15
    r = lg3_check(1.0, 1.0, 1.0)
    assert r.satisfied and r.worst == 0.0
    with pytest.raises(DomainError):
        lg3_check(1.5, 0.0, 0.0)


def test_nsit_check_basics():
    assert nsit_check([0.2, 0.8], [0.2, 0.8], tol=1e-12)
    with pytest.raises(DomainError):
        nsit_check([0.2, 0.8], [1.0], tol=1e-12)


def test_nsit_check_double_slit_generic_fails():
    state = SlitStateDouble(0.5, 0.0)
    Ys = [0.3, 1.1, 2.9]
    p2 = []
    summed = []
    for Y in Ys:
        d = densities(state, ScreenPhaseDouble(Y))
        p2.append(d.p2)
        summed.append(d.p12_plus + d.p12_minus)
    assert not nsit_check(summed, p2, tol=1e-9)


def test_nsit_check_triple_manifold_passes():
    sp = ScreenPhaseTriple(0.4, -0.9)
    phi = 1.1
    theta = nsit_theta_solution(phi, sp)
    d = quasi_densities(SlitStateTriple(theta, phi), sp)
    summed = [d.p12_plus + d.p12_minus + d.p12_zero]
    assert nsit_check(summed, [d.p2], tol=1e-12)


def test_indirect_quasi_reduces_to_p12_under_nsit():
    p12 = np.array([[0.3, 0.1], [0.2, 0.4]])
    p2 = p12.sum(axis=0)
    t = indirect_quasi(p12, p2, norm_units="absolute")
    np.testing.assert_array_equal(t.q, p12)


def test_indirect_quasi_double_slit_golden():
    state = SlitStateDouble(5 * math.pi / 8, 0.0)
    d = densities(state, ScreenPhaseDouble(0.0))
    t = indirect_quasi([[d.p12_plus], [d.p12_minus]], [d.p2])
    assert abs(t.entry(1, 0) - (1 - math.sqrt(2)) / 2) <= 1e-12
    assert abs(t.entry(1, 0) - d.q_plus) <= 1e-15
    assert abs(t.entry(-1, 0) - d.q_minus) <= 1e-15


def test_indirect_quasi_triple_slit_dichotomization():
    # Q = 2 E_+ - 1 at the argmin of the center-slit golden: the sequential
    # distribution for the minus branch picks up the 0/- interference term
    theta_star = 0.5 * (math.pi - math.atan(math.sqrt(2.0)))
    state = SlitStateTriple(theta_star, 5 * math.pi / 4)
    sp = ScreenPhaseTriple(0.0, 0.0)
    d = quasi_densities(state, sp)
    t = interference_terms(state, sp)
    p12_q = [[d.p12_plus], [d.p12_minus + d.p12_zero + 2.0 * t.i_m0]]
    table = indirect_quasi(p12_q, [d.p2])
    assert abs(table.entry(1, 0) - d.q_plus) <= 1e-14
    assert abs(table.entry(-1, 0) - (d.q_minus + d.q_zero)) <= 1e-14


def test_indirect_quasi_marginal_exact():
    rng = np.random.default_rng(7)
    for _ in range(50):
        p12 = rng.uniform(0.0, 1.0, (2, 5))
        p2 = rng.uniform(0.0, 2.0, 5)
        table = indirect_quasi(p12, p2)
        # the second row is closed against p2; only the final re-addition rounds
        np.testing.assert_allclose(table.marginal_second(), p2, rtol=0, atol=5e-16)


def test_indirect_quasi_shape_errors():
    with pytest.raises(DomainError):
        indirect_quasi(np.ones((3, 2)) / 6, np.ones(2) / 2)
    with pytest.raises(DomainError):
        indirect_quasi(np.ones((2, 3)) / 6, np.ones(2) / 2)


def test_nsit_implies_lg_for_dichotomic():
    rng = np.random.default_rng(11)
    for _ in range(100):
        p12 = rng.uniform(0.0, 1.0, (2, 4))
        p2 = p12.sum(axis=0)  # NSIT holds
        assert nsit_check(p12.sum(axis=0), p2, tol=1e-12)
        table = indirect_quasi(p12, p2)
        assert lg2_check(table).satisfied


def test_quasi_decomposition_check():
    assert quasi_decomposition_check(0.25, 0.25, 0.0)
    state = SlitStateDouble(0.5, 0.0)
    d = densities(state, ScreenPhaseDouble(math.pi))
    assert quasi_decomposition_check(d.q_plus, d.p12_plus, d.re_D)
    assert quasi_decomposition_check(d.q_minus, d.p12_minus, d.re_D)
    assert not quasi_decomposition_check(d.q_plus, d.p12_plus, d.re_D + 1e-6)


def test_luders_bound_on_absolute_tables():
    rng = np.random.default_rng(13)
    for _ in range(25):
        p = OscillatorParams.from_dimensionless(
            rng.uniform(-2, 2), rng.uniform(0.05, math.pi - 0.05),
            omega_t_s=rng.uniform(0.2, 1.5),
        )
        assert quasi_table(p).min_entry() >= LUDERS_BOUND - 1e-9


def test_table_validation():
    with pytest.raises(DomainError):
        QuasiProbTable((1, -1), (1, -1), np.full((2, 2), 0.3))  # sums to 1.2
    with pytest.raises(DomainError):
        QuasiProbTable((1, -1), (1,), np.ones((2, 2)) / 4)  # label mismatch
    with pytest.raises(DomainError):
        QuasiProbTable((1, -1), (1, -1), np.ones((2, 2)) / 4,
                       p2=np.array([0.9, 0.1]))  # marginal contract broken
    t = QuasiProbTable((1, -1), (1, -1), np.ones((2, 2)) / 4,
                       p2=np.array([0.5, 0.5]))
    np.testing.assert_array_equal(t.marginal_second(), [0.5, 0.5])
