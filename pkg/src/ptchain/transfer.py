"""Transfer-matrix form of the scattering problem and the CPA-laser.

M maps the plane-wave coefficients on the left of the defect pair to
those on the right, (F_f^-, F_b^-) -> (F_f^+, F_b^+). In the same
mirror-axis phase convention as :mod:`ptchain.scattering` its elements
are, with s = sin k and the common factor 1 / (-2i s),

    m11 = -conj(Gamma) e^{-ik} / (-2i s)        (Gamma at real k)
    m12 = (2U cos k - U^2 - gamma^2 - 2 gamma s) / (-2i s)
    m21 = (U^2 + gamma^2 - 2U cos k - 2 gamma s) / (-2i s)
    m22 = Gamma e^{ik} / (-2i s),

so det M = 1 and conj(M) = M^-1 hold exactly; m22 = 1/t vanishes at the
self-lasing frequency. A simultaneous zero of m11 and m22 is the
CPA-laser: the system lases and, for the correctly phased two-sided
input, absorbs perfectly at the same frequency. That happens at
omega0 = 2U with gamma = sqrt(2 - U^2), hence only for |U| < 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import LaserPole
from .model import ModelParams, WavePoint
from .scattering import POLE_EPS, ScatteringMatrix


@dataclass(frozen=True)
class TransferMatrix:
    """2x2 complex matrix mapping left-side amplitudes to right-side ones."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_array(self):
        import numpy as np

        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)


@dataclass(frozen=True)
class PortAmplitudes:
    """The four asymptotic plane-wave coefficients of one scattering state."""

    f_f_minus: complex
    f_b_minus: complex
    f_f_plus: complex
    f_b_plus: complex

    @property
    def incoming_intensity(self) -> float:
        return abs(self.f_f_minus) ** 2 + abs(self.f_b_plus) ** 2

    @property
    def outgoing_intensity(self) -> float:
        return abs(self.f_b_minus) ** 2 + abs(self.f_f_plus) ** 2


@dataclass(frozen=True)
class CpaPoint:
    """Frequency/momentum/amplitude at which the CPA-laser exists."""

    omega0: float
    k0: float
    gamma_cpa: float


def m_matrix(params: ModelParams, wp: WavePoint) -> TransferMatrix:
    """Transfer matrix at one in-band wave point.

    Unlike the scattering matrix this has no pole: every element is an
    entire function of the parameters once sin k is bounded away from 0,
    which the WavePoint constructor already guarantees.
    """
    u, gam = params.U, params.gamma
    s, c = math.sin(wp.k), math.cos(wp.k)
    den = -2j * s
    e_plus = cmath.exp(1j * wp.k)
    e_minus = cmath.exp(-1j * wp.k)
    gamma_minus = (u - e_minus) ** 2 + gam * gam - 1.0   # = Gamma
    gamma_plus = (u - e_plus) ** 2 + gam * gam - 1.0     # = conj(Gamma) for real k
    m11 = -gamma_plus * e_minus / den
    m12 = (2.0 * u * c - u * u - gam * gam - 2.0 * gam * s) / den
    m21 = (u * u + gam * gam - 2.0 * u * c - 2.0 * gam * s) / den
    m22 = gamma_minus * e_plus / den
    return TransferMatrix(m11=m11, m12=m12, m21=m21, m22=m22)


def s_from_m(m: TransferMatrix, eps_pole: float = POLE_EPS) -> ScatteringMatrix:
    """Standard two-port conversion from transfer form to scattering form.

    t_R = 1/m22, r_L = -m21/m22, r_R = m12/m22, t_L = det(M)/m22.

    Raises:
        LaserPole: if |m22| <= eps_pole (m22 = 0 is the lasing condition).
    """
    if abs(m.m22) <= eps_pole:
        raise LaserPole(f"transfer matrix m22={m.m22} at the lasing condition")
    return ScatteringMatrix(
        s11=1.0 / m.m22,
        s12=-m.m21 / m.m22,
        s21=m.m12 / m.m22,
        s22=m.det / m.m22,
    )


def cpa_laser_point(U: float) -> CpaPoint | None:
    """CPA-laser location for a given defect strength, if one exists.

    Returns CpaPoint(omega0 = 2U, k0 = arccos U, gamma_cpa = sqrt(2 - U^2))
    when |U| < 1, else None: for 1 <= |U| < 2 the broken phase still
    exists but no frequency supports simultaneous lasing and coherent
    perfect absorption.
    """
    if not abs(U) < 1.0:
        return None
    return CpaPoint(omega0=2.0 * U, k0=math.acos(U), gamma_cpa=math.sqrt(2.0 - U * U))


def scatter_outputs(sm: ScatteringMatrix, f_b_plus: complex, f_f_minus: complex) -> PortAmplitudes:
    """Outgoing amplitudes for a given two-sided injection.

    (F_b^-, F_f^+) = S (F_b^+, F_f^-); the returned record packs all four
    port coefficients of the stationary state.
    """
    f_b_minus = sm.s11 * f_b_plus + sm.s12 * f_f_minus
    f_f_plus = sm.s21 * f_b_plus + sm.s22 * f_f_minus
    return PortAmplitudes(f_f_minus=complex(f_f_minus), f_b_minus=f_b_minus,
                          f_f_plus=f_f_plus, f_b_plus=complex(f_b_plus))


def output_coefficient_theta(params: ModelParams, wp: WavePoint, sigma: complex,
                             eps_pole: float = POLE_EPS) -> float:
    """Overall output coefficient for two-sided injection with ratio sigma.

    Theta = (|1 + sigma m12|^2 + |sigma - m21|^2) / ((1 + |sigma|^2) |m22|^2),

    the ratio of total outgoing to total incoming intensity when the two
    injected signals satisfy F_b^+ / F_f^- = sigma. Theta vanishes
    quadratically at the CPA-laser frequency for sigma = m21(k0); for a
    lossless defect (gamma = 0) it equals 1 for every sigma.

    Raises:
        LaserPole: if |m22| <= eps_pole; exactly at the CPA-laser point
            the expression is 0/0 and callers should probe nearby
            frequencies instead.
    """
    m = m_matrix(params, wp)
    if abs(m.m22) <= eps_pole:
        raise LaserPole(f"theta undefined exactly at the lasing point k={wp.k}")
    num = abs(1.0 + sigma * m.m12) ** 2 + abs(sigma - m.m21) ** 2
    return num / ((1.0 + abs(sigma) ** 2) * abs(m.m22) ** 2)
