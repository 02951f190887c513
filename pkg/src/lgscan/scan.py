"""Parameter sweeps over the physical systems, with CSV/JSON emission.

A scan walks the product grid of its axes in row-major order (axes in
declared order), evaluates the closed forms at every point and writes one
row per point.  Output is deterministic: identical configs give
byte-identical files.  Booleans are written as 0/1, floats with the
shortest round-trip decimal, and every row carries a ``norm`` column naming
the units (``abs``, or ``per_Nt2`` for slit densities carrying the
undetermined envelope factor).

Grid evaluation can run on a thread pool capped by the ``LG_SCAN_THREADS``
environment variable; chunks are reassembled in grid order, so the output
does not depend on scheduling.
"""

from __future__ import annotations

import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import kernels
from .core import SCAN_VIOLATION_TOL
from .errors import DomainError
from .triple_slit import NSIT_TOL

__all__ = [
    "ScanConfig",
    "ScanResult",
    "parse_axis",
    "run_scan",
    "json_schema",
    "COLUMNS",
    "SINGULAR_MARGIN",
]

#: half-width of the excluded neighborhood around propagator caustics
SINGULAR_MARGIN = 1e-6

COLUMNS = {
    "double-slit": ("phi", "Y", "q_plus", "q_minus", "p2",
                    "destructive", "lg_violated", "norm"),
    "triple-slit": ("phi", "theta", "xplus", "xminus", "q_plus", "q_minus",
                    "q_zero", "p2", "nsit_overall", "lg_violated", "vn_plus",
                    "norm"),
    "sho": ("pprime", "omegat", "q_pp", "q_pm", "q_mp", "q_mm",
            "mean2", "c12", "norm"),
    "free": ("pprime", "tau", "q_pp", "q_pm", "q_mp", "q_mm",
             "mean2", "c12", "norm"),
}

_NORM = {
    "double-slit": "per_Nt2",
    "triple-slit": "per_Nt2",
    "sho": "abs",
    "free": "abs",
}

_AXES = {
    "double-slit": ("phi", "Y"),
    "triple-slit": ("phi", "theta", "xplus", "xminus"),
    "sho": ("pprime", "omegat"),
    "free": ("pprime", "tau"),
}


def parse_axis(text: str) -> np.ndarray:
    """Parse ``min:max:steps`` (end-inclusive) or a bare scalar."""
    parts = str(text).split(":")
    if len(parts) == 1:
        return np.array([float(parts[0])])
    if len(parts) != 3:
        raise DomainError(f"axis must be 'value' or 'min:max:steps', got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    steps = int(parts[2])
    if steps < 2:
        raise DomainError(f"swept axis needs at least 2 steps, got {steps}")
    if not hi > lo:
        raise DomainError(f"axis range must have max > min, got {text!r}")
    return np.linspace(lo, hi, steps)


@dataclass
class ScanConfig:
    """Validated description of one parameter sweep."""

    system: str
    axes: dict = field(default_factory=dict)  # name -> value array, in order
    out: str | None = None
    fmt: str = "csv"
    violation_tol: float = SCAN_VIOLATION_TOL
    nsit_tol: float = NSIT_TOL
    nsit_manifold: bool = False
    omega_t_s: float = 0.5

    def __post_init__(self):
        if self.system not in COLUMNS:
            raise DomainError(f"unknown system {self.system!r}")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {self.fmt!r}")
        expected = list(_AXES[self.system])
        if self.system == "triple-slit" and self.nsit_manifold:
            expected.remove("theta")
        if list(self.axes) != expected:
            raise DomainError(
                f"system {self.system!r} sweeps axes {expected}, got {list(self.axes)}"
            )
        for name, values in self.axes.items():
            values = np.atleast_1d(np.asarray(values, dtype=float))
            if values.size < 1:
                raise DomainError(f"axis {name!r} is empty")
            self.axes[name] = values
        if self.system == "sho":
            bad = np.abs(np.sin(self.axes["omegat"])) <= SINGULAR_MARGIN
            if np.any(bad):
                raise DomainError(
                    "omegat grid enters the excluded neighborhood of a "
                    f"propagator caustic (|sin| <= {SINGULAR_MARGIN:g})"
                )
        if self.system == "free" and np.any(self.axes["tau"] <= 0.0):
            raise DomainError("tau must be positive")
        if self.system == "sho" and self.omega_t_s <= 0.0:
            raise DomainError("omega_t_s must be positive")

    @property
    def shape(self) -> tuple:
        return tuple(v.size for v in self.axes.values())


@dataclass
class ScanResult:
    system: str
    columns: tuple
    rows: np.ndarray  # numeric matrix, one row per grid point (norm excluded)
    norm: str

    def csv_lines(self):
        yield ",".join(self.columns)
        for row in self.rows:
            cells = [_format_number(v) for v in row]
            cells.append(self.norm)
            yield ",".join(cells)

    def json_payload(self) -> dict:
        rows = [
            [None if math.isnan(v) else _json_number(v) for v in row]
            for row in self.rows
        ]
        return {
            "system": self.system,
            "norm": self.norm,
            "columns": list(self.columns),
            "rows": rows,
        }


def _format_number(v: float) -> str:
    if math.isnan(v):
        return "nan"
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def _json_number(v: float):
    iv = int(v)
    if v == iv and abs(v) < 1e15:
        return iv
    return float(v)


def _threads() -> int:
    raw = os.environ.get("LG_SCAN_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise DomainError(f"LG_SCAN_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def _mesh(config: ScanConfig):
    grids = np.meshgrid(*config.axes.values(), indexing="ij")
    return [g.ravel() for g in grids]


def _eval_chunked(func, arrays, n_cols):
    """Evaluate func(chunk arrays) -> column matrix, chunked over a pool."""
    n = arrays[0].size
    threads = _threads()
    if threads == 1 or n < 4 * threads:
        return func(*arrays)
    bounds = np.linspace(0, n, threads * 4 + 1, dtype=int)
    out = np.empty((n, n_cols))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {
            pool.submit(func, *(a[lo:hi] for a in arrays)): (lo, hi)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        }
        for fut, (lo, hi) in futures.items():
            out[lo:hi] = fut.result()
    return out


def _eval_double_slit(config: ScanConfig) -> np.ndarray:
    phi, Y = _mesh(config)

    def chunk(phi, Y):
        q_plus, q_minus, p2, inter = kernels.double_slit_grid(phi, Y)
        violated = np.minimum(q_plus, q_minus) < -config.violation_tol
        return np.column_stack(
            (phi, Y, q_plus, q_minus, p2,
             (inter < 0.0).astype(float), violated.astype(float))
        )

    return _eval_chunked(chunk, (phi, Y), 7)


def _eval_triple_slit(config: ScanConfig) -> np.ndarray:
    if config.nsit_manifold:
        phi, xplus, xminus = _mesh(config)

        def chunk(phi, xplus, xminus):
            theta = kernels.nsit_theta_grid(phi, xplus, xminus)
            singular = np.isnan(theta)
            theta_safe = np.where(singular, 0.0, theta)
            cols = _triple_columns(config, theta_safe, phi, xplus, xminus)
            # no manifold solution: densities undefined, flags cleared
            cols[singular, 1] = np.nan
            cols[singular, 4:8] = np.nan
            cols[singular, 8:10] = 0.0
            cols[singular, 10] = np.nan
            return cols

        return _eval_chunked(chunk, (phi, xplus, xminus), 11)

    phi, theta, xplus, xminus = _mesh(config)

    def chunk(phi, theta, xplus, xminus):
        return _triple_columns(config, theta, phi, xplus, xminus)

    return _eval_chunked(chunk, (phi, theta, xplus, xminus), 11)


def _triple_columns(config, theta, phi, xplus, xminus) -> np.ndarray:
    q_plus, q_minus, q_zero, p2, i_0p, i_m0, i_mp, vn_plus = (
        kernels.triple_slit_grid(theta, phi, xplus, xminus)
    )
    total = i_0p + i_m0 + i_mp
    nsit = np.abs(total) <= config.nsit_tol
    min_q = np.minimum(np.minimum(q_plus, q_minus), q_zero)
    violated = min_q < -config.violation_tol
    return np.column_stack(
        (phi, theta, xplus, xminus, q_plus, q_minus, q_zero, p2,
         nsit.astype(float), violated.astype(float), vn_plus)
    )


def _eval_oscillator(config: ScanConfig) -> np.ndarray:
    pprime, time_axis = _mesh(config)
    if config.system == "sho":
        u = config.omega_t_s * np.cos(time_axis) / np.sin(time_axis)
    else:
        u = 1.0 / (2.0 * time_axis)

    def chunk(pprime, time_axis, u):
        q_pp, q_pm, q_mp, q_mm, mean2, c12 = kernels.sho_tables_from_u(pprime, u)
        return np.column_stack(
            (pprime, time_axis, q_pp, q_pm, q_mp, q_mm, mean2, c12)
        )

    return _eval_chunked(chunk, (pprime, time_axis, u), 8)


_EVALUATORS = {
    "double-slit": _eval_double_slit,
    "triple-slit": _eval_triple_slit,
    "sho": _eval_oscillator,
    "free": _eval_oscillator,
}


def run_scan(config: ScanConfig, stream=None) -> ScanResult:
    """Evaluate the scan and write it to ``config.out`` (or ``stream``/stdout).

    Returns the in-memory result as well.  I/O failures propagate as
    ``OSError`` for the CLI to map to its exit code.
    """
    rows = _EVALUATORS[config.system](config)
    result = ScanResult(
        system=config.system,
        columns=COLUMNS[config.system],
        rows=rows,
        norm=_NORM[config.system],
    )
    if config.out is not None:
        with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
            _write(result, config.fmt, fh)
    else:
        _write(result, config.fmt, stream if stream is not None else sys.stdout)
    return result


def _write(result: ScanResult, fmt: str, fh) -> None:
    if fmt == "csv":
        for line in result.csv_lines():
            fh.write(line)
            fh.write("\n")
    else:
        json.dump(result.json_payload(), fh, separators=(",", ":"))
        fh.write("\n")


def json_schema() -> dict:
    """The shipped JSON schema for scan datasets."""
    with resources.files(__package__).joinpath("scan_schema.json").open() as fh:
        return json.load(fh)
