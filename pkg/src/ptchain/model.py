"""Model parameters and the momentum/frequency dispersion of the uniform chain.

The host lattice is an infinite tight-binding chain with unit hopping, so
propagating waves obey omega = 2 cos k with k in (0, pi). Two adjacent
sites carry the complex defect potentials U + i*gamma and U - i*gamma,
which makes the pair PT-symmetric about the bond between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar

from .errors import BandEdge, NonFinite

#: Nearest-neighbour hopping; fixed as the unit of energy.
HOPPING_J = 1.0

#: Default half-width of the excluded collar around the band edges
#: omega = +/-2. Both S and M carry a 1/sin(k) factor, so a small guard
#: keeps every downstream division well conditioned.
BAND_EDGE_EPS = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Defect parameters: on-site strength U and gain/loss amplitude gamma.

    gamma is canonically non-negative. A negative input is accepted by
    :func:`validate_params`, which flips its sign and sets ``mirrored``:
    the sign-flipped model is the spatial mirror image of the canonical
    one (left and right reflection swap, every scalar output is equal).
    """

    U: float
    gamma: float
    mirrored: bool = field(default=False, compare=False)

    #: Hopping amplitude; the unit of energy, fixed exactly.
    J: ClassVar[float] = HOPPING_J

    def __post_init__(self):
        if not (math.isfinite(self.U) and math.isfinite(self.gamma)):
            raise NonFinite(f"model parameters must be finite, got U={self.U}, gamma={self.gamma}")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0; use validate_params() to normalize a signed input")

    @property
    def resonance_ok(self) -> bool:
        """True iff |U| < 2, i.e. the resonance frequency omega = U lies in the band."""
        return abs(self.U) < 2.0

    @property
    def degenerate(self) -> bool:
        """True for the free chain (U = gamma = 0), which has no defect at all."""
        return self.U == 0.0 and self.gamma == 0.0


def validate_params(U: float, gamma: float) -> ModelParams:
    """Build normalized ModelParams from raw inputs.

    Args:
        U: real on-site potential, in units of the hopping.
        gamma: real gain/loss amplitude; a negative value is folded to
            ``-gamma`` with the ``mirrored`` flag set.

    Returns:
        ModelParams with gamma >= 0.

    Raises:
        NonFinite: if either input is NaN or infinite.
    """
    if not (math.isfinite(U) and math.isfinite(gamma)):
        raise NonFinite(f"model parameters must be finite, got U={U}, gamma={gamma}")
    if gamma < 0:
        return ModelParams(U=float(U), gamma=float(-gamma), mirrored=True)
    return ModelParams(U=float(U), gamma=float(gamma))


@dataclass(frozen=True)
class WavePoint:
    """A momentum/frequency pair kept mutually consistent: omega = 2 cos k."""

    k: float
    omega: float

    def __post_init__(self):
        if not (0.0 < self.k < math.pi):
            raise BandEdge(f"momentum k={self.k} outside the open interval (0, pi)")
        if abs(self.omega - 2.0 * math.cos(self.k)) > 1e-12:
            raise ValueError(
                f"inconsistent wave point: omega={self.omega} but 2 cos k={2.0 * math.cos(self.k)}"
            )

    @property
    def sin_k(self) -> float:
        return math.sin(self.k)


def k_from_omega(omega: float, eps_band: float = BAND_EDGE_EPS) -> WavePoint:
    """Invert the dispersion: principal-branch k = arccos(omega / 2).

    Args:
        omega: in-band frequency, |omega| < 2 - eps_band.
        eps_band: excluded collar around the band edges.

    Returns:
        WavePoint with k in (0, pi).

    Raises:
        BandEdge: if omega sits in the excluded collar or beyond.
        NonFinite: on NaN/inf input.
    """
    if not math.isfinite(omega):
        raise NonFinite(f"omega must be finite, got {omega}")
    if abs(omega) >= 2.0 - eps_band:
        raise BandEdge(f"omega={omega} within {eps_band} of a band edge (|omega| = 2)")
    k = math.acos(omega / 2.0)
    return WavePoint(k=k, omega=2.0 * math.cos(k))


def omega_from_k(k: float, eps_band: float = BAND_EDGE_EPS) -> WavePoint:
    """Evaluate the dispersion omega = 2 cos k for interior momenta.

    Raises:
        BandEdge: if k is within eps_band of 0 or pi.
        NonFinite: on NaN/inf input.
    """
    if not math.isfinite(k):
        raise NonFinite(f"k must be finite, got {k}")
    if k <= eps_band or k >= math.pi - eps_band:
        raise BandEdge(f"k={k} within {eps_band} of a band edge (k = 0 or pi)")
    return WavePoint(k=k, omega=2.0 * math.cos(k))
