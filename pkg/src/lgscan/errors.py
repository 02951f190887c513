"""Exception types shared across the library."""


class LgScanError(Exception):
    """Base class for all lgscan errors."""


class DomainError(LgScanError, ValueError):
    """Input outside the mathematical domain of an operation."""


class SingularPropagatorError(DomainError):
    """Measurement time sits on a propagator caustic (sin(omega*t) = 0)."""


class SingularManifoldError(DomainError):
    """The no-signaling solution manifold is singular at the requested point."""


class DivergentIntegralError(DomainError):
    """Gaussian integral with Re(a) <= 0 does not converge."""


class PathNearPoleError(DomainError):
    """Integration contour passes too close to a pole of the integrand."""


class ConvergenceError(LgScanError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class OracleConvergenceError(ConvergenceError):
    """A numerical cross-check oracle failed to converge.

    Raised so that an oracle that cannot produce a trustworthy number is
    distinguishable from an oracle that produced one disagreeing with the
    closed form.
    """
