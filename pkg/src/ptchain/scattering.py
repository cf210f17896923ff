"""Closed-form scattering quantities of the two-defect PT-symmetric chain.

Everything here is an explicit function of (U, gamma, k): the 2x2
scattering matrix, transmission/reflection coefficients, the S-matrix
eigenvalues, the phase discriminant, and the exceptional points where
the PT-symmetric phase breaks.

Conventions. Plane-wave phases are referenced to the mirror axis of the
defect pair (the bond midpoint), which is the choice that makes the
PT identities exact elementwise:

    conj(S) = S^-1,   r_L * conj(r_R) = 1 - T,   sqrt(R_L R_R) = |T - 1|.

With E = e^{-ik} and the common denominator

    Gamma = (U - E)^2 + gamma^2 - 1,

the matrix elements are

    t   = s11 = s22 = -2i sin(k) E / Gamma,
    r_L = s12 = (-U^2 - gamma^2 + 2 gamma sin k + 2 U cos k) E / Gamma,
    r_R = s21 = (-U^2 - gamma^2 - 2 gamma sin k + 2 U cos k) E / Gamma.

S maps incoming port amplitudes to outgoing ones, (F_b^+, F_f^-) ->
(F_b^-, F_f^+), so the roles are [[t_R, r_L], [r_R, t_L]] with
t_L = t_R = t for this reciprocal system. Gamma = 0 is the self-lasing
pole; functions below raise LaserPole there instead of returning
infinities.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import LaserPole
from .model import ModelParams, WavePoint, k_from_omega

#: |Gamma| at or below this is treated as the lasing singularity.
POLE_EPS = 1e-12

#: Default half-width of the Delta ~ 0 band classified as an exceptional
#: point in exact-arithmetic contexts. Delta crosses zero transversally,
#: so a tiny fixed band suffices off-grid; grid sweeps use a
#: resolution-aware band instead (see ptchain.sweeps).
EP_TOL = 1e-10


@dataclass(frozen=True)
class ScatteringMatrix:
    """2x2 complex scattering matrix with labeled port roles.

    s11 = t_R, s12 = r_L, s21 = r_R, s22 = t_L.
    """

    s11: complex
    s12: complex
    s21: complex
    s22: complex

    @property
    def t(self) -> complex:
        """Transmission amplitude (equal from both sides)."""
        return self.s11

    @property
    def t_r(self) -> complex:
        return self.s11

    @property
    def t_l(self) -> complex:
        return self.s22

    @property
    def r_l(self) -> complex:
        return self.s12

    @property
    def r_r(self) -> complex:
        return self.s21

    @property
    def det(self) -> complex:
        return self.s11 * self.s22 - self.s12 * self.s21

    @property
    def trace(self) -> complex:
        return self.s11 + self.s22

    def as_array(self):
        import numpy as np

        return np.array([[self.s11, self.s12], [self.s21, self.s22]], dtype=complex)


@dataclass(frozen=True)
class ScatterCoefficients:
    """Amplitudes and squared-modulus coefficients for both injection sides."""

    t: complex
    r_L: complex
    r_R: complex
    T: float
    R_L: float
    R_R: float


class PtPhase(enum.Enum):
    """PT phase of the scattering process at one (U, gamma, omega)."""

    EXACT = "exact"
    BROKEN = "broken"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class PhaseReport:
    """Classification of one in-band point, with the quantities behind it."""

    delta: float
    T: float
    s1: complex
    s2: complex
    classification: PtPhase
    degenerate: bool = False


def gamma_factor(params: ModelParams, wp: WavePoint) -> complex:
    """Common denominator of all S-matrix elements.

    Returns (U - e^{-ik})^2 + gamma^2 - 1 raw; it vanishes at the
    self-lasing frequency, so callers needing 1/Gamma must guard.
    """
    e = cmath.exp(-1j * wp.k)
    return (params.U - e) ** 2 + params.gamma ** 2 - 1.0


def s_matrix(params: ModelParams, wp: WavePoint, eps_pole: float = POLE_EPS) -> ScatteringMatrix:
    """Closed-form scattering matrix at one in-band wave point.

    Raises:
        LaserPole: if |Gamma| <= eps_pole (self-lasing singularity).
    """
    g = gamma_factor(params, wp)
    if abs(g) <= eps_pole:
        raise LaserPole(
            f"scattering matrix pole at U={params.U}, gamma={params.gamma}, k={wp.k}"
        )
    u, gam = params.U, params.gamma
    s, c = math.sin(wp.k), math.cos(wp.k)
    e = cmath.exp(-1j * wp.k)
    t = -2j * s * e / g
    r_l = (-u * u - gam * gam + 2.0 * gam * s + 2.0 * u * c) * e / g
    r_r = (-u * u - gam * gam - 2.0 * gam * s + 2.0 * u * c) * e / g
    return ScatteringMatrix(s11=t, s12=r_l, s21=r_r, s22=t)


def scattering_coefficients(params: ModelParams, wp: WavePoint,
                            eps_pole: float = POLE_EPS) -> ScatterCoefficients:
    """Transmission/reflection amplitudes and their squared moduli."""
    sm = s_matrix(params, wp, eps_pole)
    return ScatterCoefficients(
        t=sm.t,
        r_L=sm.r_l,
        r_R=sm.r_r,
        T=abs(sm.t) ** 2,
        R_L=abs(sm.r_l) ** 2,
        R_R=abs(sm.r_r) ** 2,
    )


def transmission_closed_form(params: ModelParams, omega: float,
                             eps_pole: float = POLE_EPS) -> float:
    """Transmission coefficient directly as a rational function of omega.

    T = (4 - omega^2) / ([U^2 - U omega + 1]^2
                          + (gamma^2 - 1) [2U^2 - 2U omega + omega^2 + gamma^2 - 3])

    The denominator equals |Gamma|^2, so this cross-validates the matrix
    route: it must agree with |t|^2 from :func:`scattering_coefficients`.

    Raises:
        LaserPole: if the denominator magnitude is <= eps_pole * (4 - omega^2).
    """
    k_from_omega(omega)  # reuse the band-edge guard
    u, gam = params.U, params.gamma
    num = 4.0 - omega * omega
    den = (u * u - u * omega + 1.0) ** 2 + (gam * gam - 1.0) * (
        2.0 * u * u - 2.0 * u * omega + omega * omega + gam * gam - 3.0
    )
    if abs(den) <= eps_pole * num:
        raise LaserPole(
            f"transmission pole at U={u}, gamma={gam}, omega={omega}"
        )
    return num / abs(den)


def discriminant(params: ModelParams, omega: float) -> float:
    """Phase discriminant Delta = (omega - U)^2 + gamma^2 (gamma^2 + U^2 - 4) / (gamma^2 + U^2).

    Delta > 0: PT-symmetric (exact) phase, unimodular S eigenvalues, T < 1.
    Delta < 0: broken phase, reciprocal eigenvalue moduli, T > 1.
    Delta = 0: exceptional point.

    For the free chain (U = gamma = 0) the second term is 0/0; by the
    Hermitian-limit convention it is taken as zero, giving Delta = omega^2
    (see ModelParams.degenerate for the flag).
    """
    u, gam = params.U, params.gamma
    q = gam * gam + u * u
    # gamma == 0 kills the second term exactly; q == 0 additionally catches
    # underflow of gamma^2 + U^2 for subnormal-scale parameters, where the
    # Hermitian-limit convention is the correct limit value anyway.
    if gam == 0.0 or q == 0.0:
        return (omega - u) ** 2
    return (omega - u) ** 2 + gam * gam * (q - 4.0) / q


def _g_factor(params: ModelParams, omega: float) -> float:
    """Prefactor g = -(gamma^2 + U^2) / (4 - omega^2); negative in-band."""
    return -(params.gamma ** 2 + params.U ** 2) / (4.0 - omega * omega)


def sort_eigenvalue_pair(s1: complex, s2: complex) -> tuple[complex, complex]:
    """Deterministic ordering: descending modulus, ties by ascending phase in (-pi, pi]."""
    def key(z: complex):
        ph = cmath.phase(z)      # (-pi, pi]
        return (-abs(z), ph)

    a, b = sorted((s1, s2), key=key)
    return a, b


def pair_distance(a: tuple[complex, complex], b: tuple[complex, complex]) -> float:
    """Distance between two unordered pairs: worst element under the best matching.

    Eigenvalue pairs are only defined up to order (moduli ties make any
    fixed ordering float-noise sensitive), so agreement checks go through
    this instead of elementwise comparison.
    """
    direct = max(abs(a[0] - b[0]), abs(a[1] - b[1]))
    swapped = max(abs(a[0] - b[1]), abs(a[1] - b[0]))
    return min(direct, swapped)


def s_eigenvalues_closed(params: ModelParams, wp: WavePoint,
                         eps_pole: float = POLE_EPS) -> tuple[complex, complex]:
    """S-matrix eigenvalues from the closed form s = t (1 +/- sqrt(g * Delta)).

    The principal square root is used; the unordered pair is what the
    theory constrains. Returned sorted by descending modulus.
    """
    sm = s_matrix(params, wp, eps_pole)
    g_delta = _g_factor(params, wp.omega) * discriminant(params, wp.omega)
    root = cmath.sqrt(complex(g_delta))
    return sort_eigenvalue_pair(sm.t * (1.0 + root), sm.t * (1.0 - root))


def s_eigenvalues_direct(sm: ScatteringMatrix) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix via a numerically stable quadratic solve.

    Roots of lambda^2 - tr(S) lambda + det(S): the larger-magnitude root
    is computed first, the other as det(S) divided by it, which avoids
    cancellation when the roots differ widely in magnitude.
    """
    tr = sm.trace
    det = sm.det
    disc = cmath.sqrt(tr * tr - 4.0 * det)
    # Pick the sign that avoids cancellation in tr +/- disc.
    if abs(tr + disc) >= abs(tr - disc):
        big = (tr + disc) / 2.0
    else:
        big = (tr - disc) / 2.0
    if big == 0:
        return sort_eigenvalue_pair(0.0 + 0.0j, tr)
    return sort_eigenvalue_pair(big, det / big)


def classify_phase(params: ModelParams, omega: float, tol_ep: float = EP_TOL) -> PhaseReport:
    """Classify the PT phase at one in-band frequency.

    The sign of Delta decides, with a tolerance band of width tol_ep
    around zero reported as the exceptional point. In the Hermitian limit
    gamma = 0 the matrix is unitary for every omega, so the point
    Delta = 0 at resonance is reported as exact rather than exceptional.

    Raises:
        BandEdge / LaserPole: propagated from the constituent evaluations.
    """
    wp = k_from_omega(omega)
    delta = discriminant(params, omega)
    sm = s_matrix(params, wp)
    s1, s2 = s_eigenvalues_closed(params, wp)
    if params.gamma == 0.0 or delta > tol_ep:
        cls = PtPhase.EXACT
    elif delta < -tol_ep:
        cls = PtPhase.BROKEN
    else:
        cls = PtPhase.EXCEPTIONAL
    return PhaseReport(delta=delta, T=abs(sm.t) ** 2, s1=s1, s2=s2,
                       classification=cls, degenerate=params.degenerate)


@dataclass(frozen=True)
class ExceptionalPoints:
    """The pair of frequencies where Delta = 0, if any.

    ``degenerate`` marks the Hermitian case gamma = 0, where Delta only
    touches zero at the resonance omega = U. ``minus_in_band`` /
    ``plus_in_band`` note whether each frequency lies inside (-2, 2).
    """

    omega_minus: float
    omega_plus: float
    degenerate: bool
    minus_in_band: bool
    plus_in_band: bool


def exceptional_points(params: ModelParams) -> ExceptionalPoints | None:
    """Locate the exceptional-point frequencies for given (U, gamma).

    Returns None when gamma^2 + U^2 - 4 >= 0 with gamma > 0: Delta > 0
    for every frequency and the system is PT-symmetric across the whole
    band. For gamma = 0 the degenerate pair (U, U) is returned. Otherwise

        omega_+/- = U +/- sqrt(-gamma^2 (gamma^2 + U^2 - 4) / (gamma^2 + U^2)).
    """
    u, gam = params.U, params.gamma
    if gam == 0.0:
        in_band = abs(u) < 2.0
        return ExceptionalPoints(omega_minus=u, omega_plus=u, degenerate=True,
                                 minus_in_band=in_band, plus_in_band=in_band)
    cond = gam * gam + u * u - 4.0
    if cond >= 0.0:
        return None
    half_width = math.sqrt(-gam * gam * cond / (gam * gam + u * u))
    lo, hi = u - half_width, u + half_width
    return ExceptionalPoints(omega_minus=lo, omega_plus=hi, degenerate=False,
                             minus_in_band=abs(lo) < 2.0, plus_in_band=abs(hi) < 2.0)
