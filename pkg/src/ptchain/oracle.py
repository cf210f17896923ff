"""Brute-force lattice solver for scattering off a finite block of defects.

This module is the independent cross-check for every closed form in
:mod:`ptchain.scattering` and :mod:`ptchain.transfer`. It solves the
stationary amplitude equations

    omega * A[n] = A[n-1] + A[n+1] + v[n] * A[n]

directly, for an arbitrary finite array of complex on-site potentials
v[0..m-1], by closing the infinite chain with exact plane waves on both
sides. The matching construction is exact at finite size: the unknowns
are the reflected and transmitted amplitudes plus the m interior site
amplitudes, determined by the m + 2 lattice equations at sites
n = -1, 0 .. m-1, m (all equations further out hold identically by the
dispersion relation). No truncation error, no absorbing boundaries.

Plane-wave phases are referenced to the mirror axis of the block,
n_c = (m - 1) / 2, so that for PT-symmetric potential arrays the
assembled scattering matrix satisfies conj(S) = S^-1 elementwise.

Deliberately shares no code with the closed-form modules beyond the
parameter/dispersion types: its value is its independence.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

import numpy as np

from .errors import SingularSystem
from .model import ModelParams, WavePoint

#: Reciprocal condition number below which the matching system is
#: declared rank-deficient (laser pole or band edge).
RCOND_SINGULAR = 1e-12

#: Condition number above which a solve is worth flagging to the caller.
COND_REPORT = 1e8


class Side(enum.Enum):
    """Injection side for a scattering solve."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class DefectChain:
    """Ordered complex on-site potentials placed at sites 0 .. m-1."""

    potentials: tuple[complex, ...]

    def __init__(self, potentials):
        object.__setattr__(self, "potentials", tuple(complex(v) for v in potentials))
        if not all(cmath.isfinite(v) for v in self.potentials):
            raise ValueError("defect potentials must be finite")

    def __len__(self) -> int:
        return len(self.potentials)

    @property
    def pt_symmetric(self) -> bool:
        """True iff v[j] == conj(v[m-1-j]) for all j (mirror axis between sites)."""
        m = len(self.potentials)
        return all(self.potentials[j] == self.potentials[m - 1 - j].conjugate() for j in range(m))

    @property
    def center(self) -> float:
        """Mirror axis of the block; phase reference for the plane-wave ansatz."""
        return (len(self.potentials) - 1) / 2.0


def two_site_chain(params: ModelParams) -> DefectChain:
    """The gain/loss pair [U + i*gamma, U - i*gamma] the closed forms describe."""
    return DefectChain([complex(params.U, params.gamma), complex(params.U, -params.gamma)])


@dataclass(frozen=True)
class OracleSolution:
    """Result of one brute-force scattering solve.

    r and t are the reflected/transmitted amplitudes for a unit-amplitude
    incident wave (phases referenced to the block center). ``interior``
    holds the site amplitudes A[0..m-1]. ``max_residual`` is the largest
    lattice-equation residual over a window spanning the block, relative
    to (1 + max |A|); ``condition`` is the 2-norm condition number of the
    matching system.
    """

    r: complex
    t: complex
    interior: tuple[complex, ...]
    side: Side
    k: float
    max_residual: float
    condition: float


def _amplitude(n: int, k: float, n_c: float, m: int, r: complex, t: complex,
               interior, side: Side) -> complex:
    """Full wave amplitude at site n implied by a solve's unknowns."""
    if 0 <= n < m:
        return interior[n]
    if side is Side.LEFT:
        if n < 0:
            return cmath.exp(1j * k * (n - n_c)) + r * cmath.exp(-1j * k * (n - n_c))
        return t * cmath.exp(1j * k * (n - n_c))
    if n >= m:
        return cmath.exp(-1j * k * (n - n_c)) + r * cmath.exp(1j * k * (n - n_c))
    return t * cmath.exp(-1j * k * (n - n_c))


def oracle_scatter(chain: DefectChain, wp: WavePoint, side: Side = Side.LEFT) -> OracleSolution:
    """Solve the stationary scattering problem for one injection side.

    For left injection the ansatz is

        A[n] = e^{ik(n - n_c)} + r e^{-ik(n - n_c)}   for n <= -1,
        A[n] = t e^{ik(n - n_c)}                      for n >= m,

    with n_c the block center; right injection is the mirror construction
    (incident wave e^{-ik(n - n_c)} from the right). The unknown vector
    (r, t, A[0], ..., A[m-1]) solves the lattice equations at sites
    n = -1 .. m.

    Raises:
        SingularSystem: when the matching system is rank-deficient beyond
            1e-12 (laser pole / band edge).
    """
    m = len(chain)
    k = wp.k
    omega = wp.omega
    n_c = chain.center
    nun = m + 2  # unknowns: r, t, interior amplitudes

    if side is Side.LEFT:
        inc = lambda n: cmath.exp(1j * k * (n - n_c))
        ref = lambda n: cmath.exp(-1j * k * (n - n_c))
        tra = lambda n: cmath.exp(1j * k * (n - n_c))
        incident_region = lambda n: n < 0
    else:
        inc = lambda n: cmath.exp(-1j * k * (n - n_c))
        ref = lambda n: cmath.exp(1j * k * (n - n_c))
        tra = lambda n: cmath.exp(-1j * k * (n - n_c))
        incident_region = lambda n: n >= m

    a = np.zeros((nun, nun), dtype=complex)
    b = np.zeros(nun, dtype=complex)

    def add_site(row: int, n: int, weight: complex) -> None:
        # Accumulate weight * A[n] into row, resolving A[n] by region.
        if 0 <= n < m:
            a[row, 2 + n] += weight
        elif incident_region(n):
            a[row, 0] += weight * ref(n)       # reflected unknown
            b[row] -= weight * inc(n)          # known incident drive
        else:
            a[row, 1] += weight * tra(n)       # transmitted unknown

    for row, site in enumerate(range(-1, m + 1)):
        v = chain.potentials[site] if 0 <= site < m else 0.0
        add_site(row, site, omega - v)
        add_site(row, site - 1, -1.0)
        add_site(row, site + 1, -1.0)

    cond = float(np.linalg.cond(a))
    if not np.isfinite(cond) or 1.0 / cond < RCOND_SINGULAR:
        raise SingularSystem(
            f"matching system rank-deficient (cond={cond:.3e}) for m={m}, k={k}"
        )
    x = np.linalg.solve(a, b)
    r, t = complex(x[0]), complex(x[1])
    interior = tuple(complex(z) for z in x[2:])

    # Residuals of the raw lattice equations across a window spanning the block.
    window = range(-3, m + 3)
    amps = {n: _amplitude(n, k, n_c, m, r, t, interior, side) for n in window}
    scale = 1.0 + max(abs(z) for z in amps.values())
    max_res = 0.0
    for n in range(-2, m + 2):
        v = chain.potentials[n] if 0 <= n < m else 0.0
        res = abs(omega * amps[n] - amps[n - 1] - amps[n + 1] - v * amps[n])
        max_res = max(max_res, res / scale)

    return OracleSolution(r=r, t=t, interior=interior, side=side, k=k,
                          max_residual=max_res, condition=cond)


def oracle_s_matrix(chain: DefectChain, wp: WavePoint):
    """Assemble the full 2x2 scattering matrix from two brute-force solves.

    Left injection yields (t_L, r_L), right injection (t_R, r_R); packed as

        [[t_R, r_L],
         [r_R, t_L]].

    For PT-symmetric chains the result satisfies the same elementwise
    identities as the closed-form matrix (conj(S) = S^-1, |det S| = 1).
    """
    from .scattering import ScatteringMatrix  # local import: keep solver standalone

    left = oracle_scatter(chain, wp, Side.LEFT)
    right = oracle_scatter(chain, wp, Side.RIGHT)
    return ScatteringMatrix(s11=right.t, s12=left.r, s21=right.r, s22=left.t)
