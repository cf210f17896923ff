"""Exception types shared across the package."""


class PtChainError(Exception):
    """Base class for all errors raised by this package."""


class NonFinite(PtChainError):
    """A model parameter was NaN or infinite."""


class BandEdge(PtChainError):
    """Frequency or momentum too close to a band edge (sin k -> 0)."""


class LaserPole(PtChainError):
    """The scattering matrix denominator vanished: self-lasing singularity.

    This marks a physical feature of the gain/loss model, not a numerical
    failure. Callers that sweep a grid should catch it and emit a flagged
    record instead of aborting.
    """


class SingularSystem(PtChainError):
    """The brute-force lattice solve hit a (near-)rank-deficient system."""
