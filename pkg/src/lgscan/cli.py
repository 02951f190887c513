"""Command-line interface.

Subcommands
-----------
``double-slit``, ``triple-slit``, ``sho``, ``free``
    Parameter sweeps writing CSV (default) or JSON to ``--out`` or stdout.
    Axis flags take a bare value or an end-inclusive ``min:max:steps`` range.
``verify``
    Recompute the golden numbers and report pass/fail per golden.

Exit codes: 0 success, 1 golden verification failed, 2 usage error,
3 output I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import DomainError
from .scan import ScanConfig, parse_axis, run_scan
from .verify import verify_goldens


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lgscan",
        description="Two-time Leggett-Garg scans for slit interferometers "
        "and the harmonic oscillator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--violation-tol", type=float, default=1e-9,
                       help="negativity threshold for the lg_violated flag")

    p = sub.add_parser("double-slit", help="scan (phi, Y)")
    p.add_argument("--phi", required=True, help="mixing angle axis")
    p.add_argument("--Y", required=True, help="reduced screen phase axis")
    add_common(p)

    p = sub.add_parser("triple-slit", help="scan (phi, theta, X+, X-)")
    p.add_argument("--phi", required=True)
    p.add_argument("--theta", default=None,
                   help="mixing angle axis (omit with --nsit-manifold)")
    p.add_argument("--xplus", required=True)
    p.add_argument("--xminus", required=True)
    p.add_argument("--nsit-manifold", action="store_true",
                   help="solve theta from the overall no-signaling condition")
    p.add_argument("--nsit-tol", type=float, default=1e-9)
    add_common(p)

    p = sub.add_parser("sho", help="scan (p', omega t) for the oscillator")
    p.add_argument("--pprime", required=True)
    p.add_argument("--omegat", required=True)
    p.add_argument("--omega-ts", type=float, default=0.5,
                   help="omega * t_s selecting the state family "
                   "(0.5 = coherent state)")
    add_common(p)

    p = sub.add_parser("free", help="scan (p', tau) for the free particle")
    p.add_argument("--pprime", required=True)
    p.add_argument("--tau", required=True)
    add_common(p)

    sub.add_parser("verify", help="recompute and check the golden numbers")
    return parser


def _config_from_args(args) -> ScanConfig:
    kwargs = dict(
        out=args.out,
        fmt=args.format,
        violation_tol=args.violation_tol,
    )
    if args.command == "double-slit":
        axes = {"phi": parse_axis(args.phi), "Y": parse_axis(args.Y)}
        return ScanConfig(system="double-slit", axes=axes, **kwargs)
    if args.command == "triple-slit":
        axes = {"phi": parse_axis(args.phi)}
        if args.nsit_manifold:
            if args.theta is not None:
                raise DomainError("--theta conflicts with --nsit-manifold")
        else:
            if args.theta is None:
                raise DomainError("--theta is required without --nsit-manifold")
            axes["theta"] = parse_axis(args.theta)
        axes["xplus"] = parse_axis(args.xplus)
        axes["xminus"] = parse_axis(args.xminus)
        return ScanConfig(
            system="triple-slit", axes=axes, nsit_manifold=args.nsit_manifold,
            nsit_tol=args.nsit_tol, **kwargs,
        )
    if args.command == "sho":
        axes = {"pprime": parse_axis(args.pprime), "omegat": parse_axis(args.omegat)}
        return ScanConfig(system="sho", axes=axes, omega_t_s=args.omega_ts, **kwargs)
    axes = {"pprime": parse_axis(args.pprime), "tau": parse_axis(args.tau)}
    return ScanConfig(system="free", axes=axes, **kwargs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        report = verify_goldens()
        print(report.render())
        return 0 if report.all_passed else 1
    try:
        config = _config_from_args(args)
    except (DomainError, ValueError) as exc:
        print(f"lgscan: {exc}", file=sys.stderr)
        return 2
    try:
        run_scan(config)
    except OSError as exc:
        print(f"lgscan: cannot write output: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
