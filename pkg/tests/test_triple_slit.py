"""Tests for the triple-slit closed forms and no-signaling structure."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgscan.errors import DomainError, SingularManifoldError
from lgscan.triple_slit import (
    ScreenPhaseTriple,
    SlitStateTriple,
    classify_triple,
    interference_terms,
    nsit_dichotomizations,
    nsit_manifold_grid,
    nsit_overall,
    nsit_theta_solution,
    quasi_densities,
    quasi_vn_plus,
)

angles = st.floats(-math.pi, math.pi, allow_nan=False)

RNG = np.random.default_rng(20240812)


def _random_point():
    return (
        SlitStateTriple(RNG.uniform(0, math.pi), RNG.uniform(0, 2 * math.pi)),
        ScreenPhaseTriple(RNG.uniform(-math.pi, math.pi),
                          RNG.uniform(-math.pi, math.pi)),
    )


def test_interference_terms_center_only():
    t = interference_terms(SlitStateTriple(0.0, 0.7), ScreenPhaseTriple(0.2, -0.4))
    assert t.i_0p == 0.0 and t.i_m0 == 0.0 and t.i_mp == 0.0


def test_interference_terms_symmetric_point():
    t = interference_terms(
        SlitStateTriple(math.pi / 4, 5 * math.pi / 4), ScreenPhaseTriple(0.0, 0.0)
    )
    assert abs(t.i_0p - (-math.sqrt(2) / 4)) <= 1e-15
    assert abs(t.i_m0 - (-math.sqrt(2) / 4)) <= 1e-15
    assert abs(t.i_mp - 0.25) <= 1e-15


def test_interference_terms_phi_half_pi():
    t = interference_terms(SlitStateTriple(0.8, math.pi / 2), ScreenPhaseTriple(0.3, 0.9))
    assert abs(t.i_0p) <= 1e-15
    assert abs(t.i_mp) <= 1e-15


def test_quasi_center_golden_minimum():
    sp = ScreenPhaseTriple(0.0, 0.0)
    phi = 5 * math.pi / 4
    theta_star = 0.5 * (math.pi - math.atan(math.sqrt(2.0)))
    d = quasi_densities(SlitStateTriple(theta_star, phi), sp)
    assert abs(d.q_zero - (1.0 - math.sqrt(3.0)) / 2.0) <= 1e-14
    # nearby angles are no lower
    for dt in (-1e-4, 1e-4):
        other = quasi_densities(SlitStateTriple(theta_star + dt, phi), sp)
        assert other.q_zero >= d.q_zero


def test_quasi_center_only_state():
    d = quasi_densities(SlitStateTriple(0.0, 1.1), ScreenPhaseTriple(0.4, 0.8))
    assert d.q_zero == 1.0 and d.q_plus == 0.0 and d.q_minus == 0.0


@given(theta=angles, phi=angles, xp=angles, xm=angles)
@settings(max_examples=300, deadline=None)
def test_sum_rule(theta, phi, xp, xm):
    d = quasi_densities(SlitStateTriple(theta, phi), ScreenPhaseTriple(xp, xm))
    assert abs(d.q_plus + d.q_minus + d.q_zero - d.p2) <= 1e-14


def test_screen_phase_from_physical():
    sp = ScreenPhaseTriple.from_physical(m=1.0, x=0.3, L=1.0, tau=2.0,
                                         chi_plus=0.1, chi_minus=-0.2)
    assert abs(sp.X_plus - (0.25 * (1.0 - 0.6) + 0.1)) <= 1e-15
    assert abs(sp.X_minus - (0.25 * (1.0 + 0.6) - 0.2)) <= 1e-15
    assert abs(sp.X - (sp.X_minus - sp.X_plus)) == 0.0


def test_nsit_overall():
    sp = ScreenPhaseTriple(0.0, 0.0)
    assert nsit_overall(SlitStateTriple(0.0, 0.3), sp)
    state = SlitStateTriple(math.pi / 4, 5 * math.pi / 4)
    assert not nsit_overall(state, sp)
    total = interference_terms(state, sp).total
    assert abs(total - (0.25 - math.sqrt(2) / 2)) <= 1e-15


def test_nsit_theta_solution_example():
    sp = ScreenPhaseTriple(0.0, 0.0)
    theta = nsit_theta_solution(math.pi / 4, sp)
    assert abs(theta - math.atan(-2.0 * math.sqrt(2.0))) <= 1e-15
    assert nsit_overall(SlitStateTriple(theta, math.pi / 4), sp, tol=1e-12)


def test_nsit_theta_solution_singular():
    with pytest.raises(SingularManifoldError):
        nsit_theta_solution(math.pi / 2, ScreenPhaseTriple(0.0, 0.0))


def test_nsit_theta_round_trip_random():
    count = 0
    for _ in range(2000):
        phi = RNG.uniform(0, 2 * math.pi)
        sp = ScreenPhaseTriple(RNG.uniform(-math.pi, math.pi),
                               RNG.uniform(-math.pi, math.pi))
        den = math.sin(phi) * math.cos(phi) * math.cos(sp.X)
        if abs(den) <= 1e-6:
            continue
        theta = nsit_theta_solution(phi, sp)
        assert nsit_overall(SlitStateTriple(theta, phi), sp, tol=1e-12)
        count += 1
    assert count > 1500


def test_nsit_dichotomizations():
    sp = ScreenPhaseTriple(0.3, 0.9)
    r = nsit_dichotomizations(SlitStateTriple(0.0, 0.7), sp)
    assert r.all()
    # phi = pi/2 kills the two terms involving the plus slit
    r = nsit_dichotomizations(SlitStateTriple(0.7, math.pi / 2), sp)
    assert r.q_plus_nsit
    assert not r.q_minus_nsit
    assert not r.q_zero_nsit


def test_overall_nsit_without_pairwise_exists_on_manifold():
    found = False
    for _ in range(200):
        phi = RNG.uniform(0.2, math.pi / 2 - 0.2)
        sp = ScreenPhaseTriple(RNG.uniform(-1.0, 1.0), RNG.uniform(-1.0, 1.0))
        den = math.sin(phi) * math.cos(phi) * math.cos(sp.X)
        if abs(den) <= 1e-3:
            continue
        theta = nsit_theta_solution(phi, sp)
        state = SlitStateTriple(theta, phi)
        if nsit_overall(state, sp, tol=1e-10) and not nsit_dichotomizations(
            state, sp, tol=1e-10
        ).all():
            found = True
            break
    assert found


def test_pairwise_nsit_forces_all_terms_zero():
    # A + B + C = 2 S is the linear identity tying the four conditions, and
    # each term is half a signed combination of A, B, C
    for _ in range(500):
        state, sp = _random_point()
        t = interference_terms(state, sp)
        A = t.i_0p + t.i_mp
        B = t.i_m0 + t.i_mp
        C = t.i_m0 + t.i_0p
        assert abs(A + B + C - 2.0 * t.total) <= 1e-15
        bound = max(abs(A), abs(B), abs(C))
        assert abs(t.i_mp) <= 1.5 * bound + 1e-15
        assert abs(t.i_0p) <= 1.5 * bound + 1e-15
        assert abs(t.i_m0) <= 1.5 * bound + 1e-15


def test_von_neumann_examples():
    sp = ScreenPhaseTriple(0.0, 0.0)
    vn = quasi_vn_plus(SlitStateTriple(math.pi / 4, math.pi / 2), sp)
    assert abs(vn - (-0.5)) <= 1e-15
    # X_- = pi/2 kills I_{-,0}, so vN coincides with the projective value
    sp2 = ScreenPhaseTriple(0.4, math.pi / 2)
    state = SlitStateTriple(0.8, 1.1)
    d = quasi_densities(state, sp2)
    assert abs(quasi_vn_plus(state, sp2) - d.q_plus) <= 1e-15
    assert quasi_vn_plus(SlitStateTriple(0.0, math.pi / 2), sp) == 0.0


@given(theta=angles, phi=angles, xp=angles, xm=angles)
@settings(max_examples=200, deadline=None)
def test_von_neumann_identity(theta, phi, xp, xm):
    state = SlitStateTriple(theta, phi)
    sp = ScreenPhaseTriple(xp, xm)
    d = quasi_densities(state, sp)
    t = interference_terms(state, sp)
    assert abs((quasi_vn_plus(state, sp) - d.q_plus) + t.i_m0) <= 1e-15


def test_classify_triple_flags():
    sp = ScreenPhaseTriple(0.0, 0.0)
    c = classify_triple(SlitStateTriple(0.0, 0.7), sp)
    assert not c["lg_violated"] and not c["destructive"]
    assert c["nsit_overall"] and not c["vn_violated"]
    theta_star = 0.5 * (math.pi - math.atan(math.sqrt(2.0)))
    c = classify_triple(SlitStateTriple(theta_star, 5 * math.pi / 4), sp)
    assert c["lg_violated"]
    assert c.min_quasi < -0.3 and c.which_min == 0


def test_violation_without_destructive_exists():
    # on the no-signaling manifold the total interference vanishes, so any
    # violation there has no destructive interference
    grid = nsit_manifold_grid(
        np.linspace(0.05, math.pi - 0.05, 120),
        np.linspace(-math.pi, math.pi, 120),
        x_plus=0.001,
    )
    assert grid["lg_violated"].any()


def test_destructive_without_violation_exists():
    found = False
    for _ in range(500):
        state, sp = _random_point()
        c = classify_triple(state, sp)
        if c["destructive"] and not c["lg_violated"]:
            found = True
            break
    assert found


def test_violation_with_destructive_exists():
    found = False
    for _ in range(500):
        state, sp = _random_point()
        c = classify_triple(state, sp)
        if c["destructive"] and c["lg_violated"]:
            found = True
            break
    assert found


def test_manifold_grid_structure():
    grid = nsit_manifold_grid(
        np.linspace(0.05, math.pi - 0.05, 60),
        np.linspace(-math.pi, math.pi, 60),
        x_plus=0.001,
    )
    ok = ~grid["singular"]
    assert ok.any()
    # solved points satisfy the overall condition by construction
    theta = grid["theta"][ok]
    assert np.isfinite(theta).all()
    assert (np.abs(theta) <= math.pi / 2).all()
