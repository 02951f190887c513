"""Numerical kernel backend selection.

Importing this package always succeeds and always exposes the same surface.
The compiled Cython extension ``_core`` is preferred when it imported
cleanly; the pure-Python module ``_pure`` is the fallback.  Set the
environment variable ``LGSCAN_PURE=1`` before import to force the fallback
(used by the benchmark and by the parity tests).
"""

import os

from . import _pure

if os.environ.get("LGSCAN_PURE", "").strip() not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND
erf_c = _impl.erf_c
faddeeva_w = _impl.faddeeva_w
owen_t_polyline = _impl.owen_t_polyline
double_slit_grid = _impl.double_slit_grid
triple_slit_grid = _impl.triple_slit_grid
nsit_theta_grid = _impl.nsit_theta_grid
sho_tables_from_u = _impl.sho_tables_from_u

__all__ = [
    "BACKEND",
    "erf_c",
    "faddeeva_w",
    "owen_t_polyline",
    "double_slit_grid",
    "triple_slit_grid",
    "nsit_theta_grid",
    "sho_tables_from_u",
]
