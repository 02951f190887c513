"""System-agnostic two-time Leggett-Garg machinery.

Conventions
-----------
A two-time quasi-probability table q(o1, o2) matches both single-time
marginals but may carry negative entries; non-negativity of every entry is
exactly the set of two-time LG inequalities for the dichotomised outcomes.
Slit-system densities arrive in units of the undetermined envelope factor
|N_t|^2 and are tagged ``per_Nt2``; tables in genuine probability units are
tagged ``absolute`` and must sum to one.  Absolute-unit invariants (the
normalization and the -1/8 quantum lower bound) are only meaningful for
``absolute`` tables.

All functions are pure; tables are small dense numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "DEFAULT_TOL",
    "SCAN_VIOLATION_TOL",
    "LUDERS_BOUND",
    "Dichotomic",
    "TwoTimeMoments",
    "InterferenceTerm",
    "QuasiProbTable",
    "RegionClassification",
    "Lg2Result",
    "Lg3Result",
    "quasi_from_moments",
    "moments_from_quasi",
    "lg2_check",
    "lg3_check",
    "nsit_check",
    "indirect_quasi",
    "quasi_decomposition_check",
]

#: default absolute tolerance for equality checks on O(1) closed forms
DEFAULT_TOL = 1e-12

#: scans flag a violation only below this threshold, to keep boundary
#: points out of region plots
SCAN_VIOLATION_TOL = 1e-9

#: quantum lower bound on any two-time quasi-probability entry under
#: projective (Luders) measurements
LUDERS_BOUND = -0.125


@dataclass(frozen=True)
class Dichotomic:
    """A variable taking only the values +1 and -1."""

    value: int

    def __post_init__(self):
        if self.value not in (1, -1):
            raise DomainError(f"dichotomic value must be +-1, got {self.value!r}")


@dataclass(frozen=True)
class TwoTimeMoments:
    """First moments and symmetrised correlator of a dichotomic pair."""

    mean1: float
    mean2: float
    correlator: float

    def __post_init__(self):
        for name in ("mean1", "mean2", "correlator"):
            v = getattr(self, name)
            if not (math.isfinite(v) and -1.0 <= v <= 1.0):
                raise DomainError(f"{name} must lie in [-1, 1], got {v!r}")


@dataclass(frozen=True)
class InterferenceTerm:
    """Real part of an off-diagonal decoherence-functional entry.

    Symmetric under swapping the pair labels (it is the real part of a
    Hermitian-conjugate pair), so the pair is stored in sorted order.
    """

    value: float
    pair: tuple

    def __post_init__(self):
        object.__setattr__(self, "pair", tuple(sorted(self.pair, key=repr)))


class QuasiProbTable:
    """Finite two-time quasi-probability table with marginal bookkeeping.

    Parameters
    ----------
    outcomes1, outcomes2:
        Outcome labels at the first and second time (any hashable,
        typically +-1 integers or screen-bin labels).
    q:
        Real matrix indexed by (outcome1, outcome2).
    norm_units:
        ``"absolute"`` for genuine probability units (entries must sum to
        one) or ``"per_Nt2"`` for slit densities carrying the undetermined
        envelope prefactor.
    p2:
        Optional second-time marginal; when given it must equal the column
        sums of ``q`` (the sum-rule contract).
    """

    __slots__ = ("outcomes1", "outcomes2", "q", "norm_units", "p2")

    def __init__(self, outcomes1, outcomes2, q, norm_units="absolute",
                 p2=None, tol=1e-10):
        self.outcomes1 = tuple(outcomes1)
        self.outcomes2 = tuple(outcomes2)
        self.q = np.atleast_2d(np.asarray(q, dtype=float))
        self.norm_units = str(norm_units)
        if self.norm_units not in ("absolute", "per_Nt2"):
            raise DomainError(f"unknown norm_units {norm_units!r}")
        if self.q.shape != (len(self.outcomes1), len(self.outcomes2)):
            raise DomainError(
                f"table shape {self.q.shape} does not match outcome labels "
                f"({len(self.outcomes1)}, {len(self.outcomes2)})"
            )
        self.p2 = None if p2 is None else np.asarray(p2, dtype=float)
        if self.p2 is not None:
            if self.p2.shape != (len(self.outcomes2),):
                raise DomainError("stored p2 length does not match outcomes2")
            if np.max(np.abs(self.marginal_second() - self.p2)) > tol:
                raise DomainError("stored p2 disagrees with the table marginal")
        if self.norm_units == "absolute" and abs(self.q.sum() - 1.0) > tol:
            raise DomainError(
                f"absolute-unit table must sum to 1, got {self.q.sum()!r}"
            )

    def entry(self, o1, o2) -> float:
        return float(self.q[self.outcomes1.index(o1), self.outcomes2.index(o2)])

    def marginal_second(self) -> np.ndarray:
        """Sum over the first-time outcome (the Eq.-level sum rule)."""
        return self.q.sum(axis=0)

    def marginal_first(self) -> np.ndarray:
        return self.q.sum(axis=1)

    def min_entry(self) -> float:
        return float(self.q.min())

    def __repr__(self):
        return (
            f"QuasiProbTable(outcomes1={self.outcomes1}, "
            f"outcomes2={self.outcomes2}, norm_units={self.norm_units!r},\n"
            f"{self.q!r})"
        )


@dataclass(frozen=True)
class RegionClassification:
    """Per-point boolean flags produced by parameter scans."""

    point: tuple
    flags: dict = field(default_factory=dict)
    min_quasi: float = math.nan
    which_min: object = None

    def __getitem__(self, name: str) -> bool:
        return self.flags[name]


@dataclass(frozen=True)
class Lg2Result:
    satisfied: bool
    min_entry: float
    argmin: tuple


@dataclass(frozen=True)
class Lg3Result:
    satisfied: bool
    worst: float


def quasi_from_moments(m: TwoTimeMoments) -> QuasiProbTable:
    """2x2 table q(s1,s2) = (1 + <Q1> s1 + <Q2> s2 + C12 s1 s2)/4.

    The (-1,-1) entry is closed off the other three so the table sums to
    one exactly in floating point.
    """
    q = np.empty((2, 2))
    outcomes = (1, -1)
    for i, s1 in enumerate(outcomes):
        for j, s2 in enumerate(outcomes):
            q[i, j] = 0.25 * (
                1.0 + m.mean1 * s1 + m.mean2 * s2 + m.correlator * s1 * s2
            )
    q[1, 1] = math.fsum((1.0, -q[0, 0], -q[0, 1], -q[1, 0]))
    return QuasiProbTable(outcomes, outcomes, q, norm_units="absolute")


def moments_from_quasi(t: QuasiProbTable, tol: float = DEFAULT_TOL) -> TwoTimeMoments:
    """Invert ``quasi_from_moments``; requires a normalized 2x2 table."""
    if t.q.shape != (2, 2):
        raise DomainError("moments are defined for 2x2 tables only")
    if abs(t.q.sum() - 1.0) > tol:
        raise DomainError("table entries must sum to 1 to define moments")
    o1 = np.array([_as_sign(o) for o in t.outcomes1], dtype=float)
    o2 = np.array([_as_sign(o) for o in t.outcomes2], dtype=float)
    mean1 = float(o1 @ t.q.sum(axis=1))
    mean2 = float(t.q.sum(axis=0) @ o2)
    correlator = float(o1 @ t.q @ o2)
    return TwoTimeMoments(mean1, mean2, correlator)


def _as_sign(label) -> int:
    if isinstance(label, Dichotomic):
        return label.value
    if label in (1, -1):
        return int(label)
    raise DomainError(f"outcome label {label!r} is not dichotomic")


def lg2_check(t: QuasiProbTable, tol: float = DEFAULT_TOL) -> Lg2Result:
    """Two-time LG inequalities: every entry of the table must be >= -tol.

    The reported argmin walks outcome pairs in lexicographic label order so
    ties resolve deterministically.
    """
    order = sorted(
        ((o1, o2) for o1 in t.outcomes1 for o2 in t.outcomes2), key=repr
    )
    min_entry = math.inf
    argmin = order[0]
    for o1, o2 in order:
        v = t.entry(o1, o2)
        if v < min_entry:
            min_entry = v
            argmin = (o1, o2)
    return Lg2Result(min_entry >= -tol, min_entry, argmin)


def lg3_check(c12: float, c23: float, c13: float, tol: float = DEFAULT_TOL) -> Lg3Result:
    """Three-time LG inequalities 1 + C12 + C23 + C13 >= 0 and sign flips.

    Takes the correlators directly; none of the systems in this library
    produce three-time correlators, so there is no physical-model entry
    point.
    """
    for name, c in (("c12", c12), ("c23", c23), ("c13", c13)):
        if not (math.isfinite(c) and -1.0 <= c <= 1.0):
            raise DomainError(f"{name} must lie in [-1, 1], got {c!r}")
    combos = (
        1.0 + c12 + c23 + c13,  # no flip
        1.0 - c12 + c23 - c13,  # flip Q1
        1.0 - c12 - c23 + c13,  # flip Q2
        1.0 + c12 - c23 - c13,  # flip Q3
    )
    worst = min(combos)
    return Lg3Result(worst >= -tol, worst)


def nsit_check(p12_summed: Sequence[float], p2: Sequence[float], tol: float) -> bool:
    """No-signaling in time: the summed sequential distribution matches p2."""
    a = np.asarray(p12_summed, dtype=float)
    b = np.asarray(p2, dtype=float)
    if a.shape != b.shape:
        raise DomainError(f"length mismatch: {a.shape} vs {b.shape}")
    return bool(np.max(np.abs(a - b)) <= tol) if a.size else True


def indirect_quasi(p12, p2, outcomes2=None, norm_units="per_Nt2") -> QuasiProbTable:
    """Assemble the quasi-probability from measurable distributions.

    For a dichotomic first-time variable the interference term drops out of

        q(s1, n2) = p12(s1, n2) + (p2(n2) - sum_{s1'} p12(s1', n2)) / 2,

    so q is determined by a non-invasive sequential measurement of p12 and
    a separate measurement of p2.  The second row is closed against p2 so
    the marginal identity sum_{s1} q(s1, n2) = p2(n2) holds to the final
    rounding of the re-addition.
    """
    p12 = np.atleast_2d(np.asarray(p12, dtype=float))
    p2 = np.atleast_1d(np.asarray(p2, dtype=float))
    if p12.shape[0] != 2:
        raise DomainError("first-time outcome set must be dichotomic (2 rows)")
    if p12.shape[1] != p2.shape[0]:
        raise DomainError(
            f"shape mismatch: p12 has {p12.shape[1]} columns, p2 has {p2.shape[0]}"
        )
    correction = 0.5 * (p2 - p12.sum(axis=0))
    q = np.empty_like(p12)
    q[0] = p12[0] + correction
    q[1] = p2 - q[0]
    if outcomes2 is None:
        outcomes2 = tuple(range(p2.shape[0]))
    return QuasiProbTable((1, -1), outcomes2, q, norm_units=norm_units, p2=p2)


def quasi_decomposition_check(q: float, p12: float, reD: float,
                              tol: float = DEFAULT_TOL) -> bool:
    """Check q = p12 + Re D, the split of the quasi-probability into the
    sequential probability plus the interference term."""
    return abs(q - (p12 + reD)) <= tol
