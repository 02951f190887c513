"""Closed-form two-time analysis of the triple-slit experiment.

Post-slit amplitudes (normalized for every theta, phi):

    alpha_+ = e^{i chi_+} sin(theta) cos(phi),
    alpha_- = e^{i chi_-} sin(theta) sin(phi),
    alpha_0 = cos(theta),

with slits at x = +-L and x = 0.  Screen position enters through the
reduced phases X_+- = m (L^2 -+ 2 L x)/(2 hbar tau) + chi_+- and
X = X_- - X_+.  There are three interference terms,

    I_{0,+} = sin th cos th cos ph cos X_+,
    I_{-,0} = sin th cos th sin ph cos X_-,
    I_{-,+} = sin^2 th cos ph sin ph cos X,

and, per |N_t|^2,

    q(+, x) = sin^2 th cos^2 ph + I_{0,+} + I_{-,+},
    q(-, x) = sin^2 th sin^2 ph + I_{-,0} + I_{-,+},
    q(0, x) = cos^2 th + I_{0,+} + I_{-,0},
    p2(x)   = 1 + 2 (I_{0,+} + I_{-,0} + I_{-,+}),
    p12(n1) = |alpha_{n1}|^2.

With three outcomes there are four no-signaling conditions: the overall one
(sum of all three interference terms vanishes) and one per dichotomization
(the two terms crossing the partition vanish as a pair).  Any three of the
four imply the fourth; all three pairwise conditions force every term to
zero and hence non-negative quasi-probabilities.  The overall condition
alone leaves room for LG violations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import SCAN_VIOLATION_TOL, RegionClassification
from .errors import DomainError, SingularManifoldError

__all__ = [
    "NSIT_TOL",
    "SlitStateTriple",
    "ScreenPhaseTriple",
    "TripleInterference",
    "TripleSlitDensities",
    "NsitDichotomizations",
    "interference_terms",
    "quasi_densities",
    "nsit_overall",
    "nsit_dichotomizations",
    "nsit_theta_solution",
    "quasi_vn_plus",
    "classify_triple",
    "nsit_manifold_grid",
]

#: tolerance used when classifying NSIT conditions in scans
NSIT_TOL = 1e-9


@dataclass(frozen=True)
class SlitStateTriple:
    theta: float
    phi: float
    chi_plus: float = 0.0
    chi_minus: float = 0.0

    @property
    def probabilities(self) -> tuple[float, float, float]:
        """(|alpha_+|^2, |alpha_-|^2, |alpha_0|^2); sums to 1."""
        st = math.sin(self.theta)
        return (
            (st * math.cos(self.phi)) ** 2,
            (st * math.sin(self.phi)) ** 2,
            math.cos(self.theta) ** 2,
        )


@dataclass(frozen=True)
class ScreenPhaseTriple:
    """Reduced screen phases; X = X_minus - X_plus by construction."""

    X_plus: float
    X_minus: float

    @property
    def X(self) -> float:
        return self.X_minus - self.X_plus

    @classmethod
    def from_physical(cls, m: float, x: float, L: float, tau: float,
                      chi_plus: float = 0.0, chi_minus: float = 0.0,
                      hbar: float = 1.0) -> "ScreenPhaseTriple":
        if tau <= 0 or hbar <= 0:
            raise DomainError("tau and hbar must be positive")
        common = m / (2.0 * hbar * tau)
        return cls(
            X_plus=common * (L * L - 2.0 * L * x) + chi_plus,
            X_minus=common * (L * L + 2.0 * L * x) + chi_minus,
        )


@dataclass(frozen=True)
class TripleInterference:
    """The three interference terms, per |N_t|^2."""

    i_0p: float
    i_m0: float
    i_mp: float

    @property
    def total(self) -> float:
        return self.i_0p + self.i_m0 + self.i_mp


@dataclass(frozen=True)
class TripleSlitDensities:
    q_plus: float
    q_minus: float
    q_zero: float
    p2: float
    p12_plus: float
    p12_minus: float
    p12_zero: float

    def min_entry(self) -> tuple[float, int]:
        """(smallest quasi-probability, its outcome label); ties go to the
        smaller label."""
        pairs = ((-1, self.q_minus), (0, self.q_zero), (1, self.q_plus))
        label, value = min(pairs, key=lambda kv: (kv[1], kv[0]))
        return value, label


@dataclass(frozen=True)
class NsitDichotomizations:
    """Per-dichotomization no-signaling conditions (Q = 2 E_n - 1)."""

    q_plus_nsit: bool
    q_minus_nsit: bool
    q_zero_nsit: bool

    def all(self) -> bool:
        return self.q_plus_nsit and self.q_minus_nsit and self.q_zero_nsit


def interference_terms(state: SlitStateTriple, sp: ScreenPhaseTriple) -> TripleInterference:
    st, ct = math.sin(state.theta), math.cos(state.theta)
    sph, cph = math.sin(state.phi), math.cos(state.phi)
    return TripleInterference(
        i_0p=st * ct * cph * math.cos(sp.X_plus),
        i_m0=st * ct * sph * math.cos(sp.X_minus),
        i_mp=st * st * cph * sph * math.cos(sp.X),
    )


def quasi_densities(state: SlitStateTriple, sp: ScreenPhaseTriple) -> TripleSlitDensities:
    terms = interference_terms(state, sp)
    p_plus, p_minus, p_zero = state.probabilities
    return TripleSlitDensities(
        q_plus=p_plus + terms.i_0p + terms.i_mp,
        q_minus=p_minus + terms.i_m0 + terms.i_mp,
        q_zero=p_zero + terms.i_0p + terms.i_m0,
        p2=1.0 + 2.0 * terms.total,
        p12_plus=p_plus,
        p12_minus=p_minus,
        p12_zero=p_zero,
    )


def nsit_overall(state: SlitStateTriple, sp: ScreenPhaseTriple,
                 tol: float = NSIT_TOL) -> bool:
    """Overall no-signaling: the three interference terms sum to zero."""
    return abs(interference_terms(state, sp).total) <= tol


def nsit_dichotomizations(state: SlitStateTriple, sp: ScreenPhaseTriple,
                          tol: float = NSIT_TOL) -> NsitDichotomizations:
    """No-signaling for each dichotomization Q = 2 E_n - 1 separately.

    Each condition zeroes the pair of interference terms crossing its
    partition; if all three hold every individual term vanishes.
    """
    t = interference_terms(state, sp)
    return NsitDichotomizations(
        q_plus_nsit=abs(t.i_0p + t.i_mp) <= tol,
        q_minus_nsit=abs(t.i_m0 + t.i_mp) <= tol,
        q_zero_nsit=abs(t.i_m0 + t.i_0p) <= tol,
    )


def nsit_theta_solution(phi: float, sp: ScreenPhaseTriple,
                        eps: float = 1e-12) -> float:
    """Mixing angle theta solving the overall no-signaling condition,

        tan theta = -(cos phi cos X+ + sin phi cos X-)
                    / (sin phi cos phi cos X),

    on the principal branch (-pi/2, pi/2).  The same manifold repeats in
    the other branches by periodicity.  A vanishing denominator means the
    manifold is singular at this (phi, X+-).
    """
    sph, cph = math.sin(phi), math.cos(phi)
    den = sph * cph * math.cos(sp.X)
    if abs(den) <= eps:
        raise SingularManifoldError(
            "sin(phi) cos(phi) cos(X) = 0: no-signaling manifold is singular here"
        )
    num = -(cph * math.cos(sp.X_plus) + sph * math.cos(sp.X_minus))
    return math.atan(num / den)


def quasi_vn_plus(state: SlitStateTriple, sp: ScreenPhaseTriple) -> float:
    """q(+, x) with the correlator taken from a von Neumann measurement.

    Resolving the degenerate outcomes at the first time flips the sign of
    the interference term inside the degenerate subspace:

        q_vN(+, x) = q(+, x) - I_{-,0}.

    Unlike the projective (Luders) case, this can go negative even when the
    no-signaling condition for the dichotomization Q = 2 E_+ - 1 holds.
    """
    t = interference_terms(state, sp)
    p_plus, _, _ = state.probabilities
    return p_plus + t.i_0p + t.i_mp - t.i_m0


def classify_triple(state: SlitStateTriple, sp: ScreenPhaseTriple,
                    tol: float = SCAN_VIOLATION_TOL,
                    nsit_tol: float = NSIT_TOL) -> RegionClassification:
    d = quasi_densities(state, sp)
    terms = interference_terms(state, sp)
    min_q, which = d.min_entry()
    return RegionClassification(
        point=(state.phi, state.theta, sp.X_plus, sp.X_minus),
        flags={
            "lg_violated": min_q < -tol,
            "destructive": 2.0 * terms.total < 0.0,
            "nsit_overall": abs(terms.total) <= nsit_tol,
            "vn_violated": quasi_vn_plus(state, sp) < -tol,
        },
        min_quasi=min_q,
        which_min=which,
    )


def nsit_manifold_grid(phis, xminus, x_plus: float = 0.001,
                       violation_tol: float = SCAN_VIOLATION_TOL):
    """Scan (phi, X_-) with theta solved from the no-signaling condition.

    Returns a dict of 2-d arrays (theta, q_plus, q_minus, q_zero,
    lg_violated, singular); singular marks grid points where the manifold
    has no solution and every other field is NaN/False there.
    """
    phis = np.asarray(phis, dtype=float)
    xminus = np.asarray(xminus, dtype=float)
    P, XM = np.meshgrid(phis, xminus, indexing="ij")
    XP = np.full_like(P, float(x_plus))
    theta = kernels.nsit_theta_grid(P.ravel(), XP.ravel(), XM.ravel())
    singular = np.isnan(theta)
    theta_safe = np.where(singular, 0.0, theta)
    q_plus, q_minus, q_zero, _, _, _, _, _ = kernels.triple_slit_grid(
        theta_safe, P.ravel(), XP.ravel(), XM.ravel()
    )
    min_q = np.minimum(np.minimum(q_plus, q_minus), q_zero)
    violated = (min_q < -violation_tol) & ~singular
    shape = P.shape
    return {
        "theta": np.where(singular, np.nan, theta_safe).reshape(shape),
        "q_plus": np.where(singular, np.nan, q_plus).reshape(shape),
        "q_minus": np.where(singular, np.nan, q_minus).reshape(shape),
        "q_zero": np.where(singular, np.nan, q_zero).reshape(shape),
        "lg_violated": violated.reshape(shape),
        "singular": singular.reshape(shape),
    }
