"""Two-time Leggett-Garg tests for slit interferometers and the oscillator.

Closed-form quasi-probabilities, interference terms and no-signaling
conditions for the double slit, the triple slit and a Gaussian state under
harmonic (or free) evolution, with independent quadrature oracles, a scan
CLI and golden-number verification.
"""

from . import core, double_slit, oscillator, special, triple_slit
from .core import (
    LUDERS_BOUND,
    QuasiProbTable,
    RegionClassification,
    TwoTimeMoments,
    indirect_quasi,
    lg2_check,
    lg3_check,
    moments_from_quasi,
    nsit_check,
    quasi_from_moments,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "core",
    "double_slit",
    "triple_slit",
    "oscillator",
    "special",
    "QuasiProbTable",
    "RegionClassification",
    "TwoTimeMoments",
    "quasi_from_moments",
    "moments_from_quasi",
    "lg2_check",
    "lg3_check",
    "nsit_check",
    "indirect_quasi",
    "LUDERS_BOUND",
    "KERNEL_BACKEND",
    "__version__",
]
