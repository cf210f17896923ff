"""Grid evaluation for frequency sweeps and (gamma, omega) heatmaps.

Produces the row data behind the CLI's CSV output. Output is
byte-deterministic for a fixed configuration: fixed column order,
ascending grids, and shortest round-trip float formatting. Laser-pole
grid points never leak bare infinities: they are emitted as flagged rows
with ``inf`` in the diverging columns and the limit value 0 for theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PtChainError
from .model import k_from_omega, validate_params
from .scattering import (
    POLE_EPS,
    discriminant,
    gamma_factor,
    s_eigenvalues_closed,
    s_matrix,
)
from .transfer import cpa_laser_point, m_matrix, output_coefficient_theta

SWEEP_COLUMNS = ("omega", "k", "T", "R_L", "R_R", "abs_s1_sq", "abs_s2_sq",
                 "log10_abs_s1_sq", "log10_abs_s2_sq", "delta", "phase",
                 "theta", "flags")

HEATMAP_COLUMNS = ("gamma", "omega", "log10_abs_s1_sq", "log10_abs_s2_sq", "flags")

#: Largest |omega| a grid may reach; leaves the band-edge collar intact.
OMEGA_LIMIT = 2.0 - 1e-9


class UsageError(PtChainError):
    """Invalid run configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _require(ok: bool, field: str, message: str) -> None:
    if not ok:
        raise UsageError(field, message)


def format_float(x: float) -> str:
    """Shortest round-trip decimal form; infinities spelled inf/-inf."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0.0"  # fold -0.0
    return repr(float(x))


@dataclass(frozen=True)
class SweepConfig:
    """One-dimensional frequency sweep at fixed (U, gamma).

    sigma is the two-sided injection ratio used for the theta column:
    None means the CPA-scan convention sigma = m21(k) varying along the
    sweep; a complex value means fixed-ratio injection.
    """

    U: float
    gamma: float
    omega_min: float = -1.99
    omega_max: float = 1.99
    steps: int = 2001
    sigma: complex | None = None

    def validate(self) -> None:
        _require(math.isfinite(self.U), "U", "must be finite")
        _require(math.isfinite(self.gamma), "gamma", "must be finite")
        _require(math.isfinite(self.omega_min) and abs(self.omega_min) < OMEGA_LIMIT,
                 "omega_min", f"must lie strictly inside (-2, 2) (|omega| < {OMEGA_LIMIT})")
        _require(math.isfinite(self.omega_max) and abs(self.omega_max) < OMEGA_LIMIT,
                 "omega_max", f"must lie strictly inside (-2, 2) (|omega| < {OMEGA_LIMIT})")
        _require(self.omega_min < self.omega_max, "omega_min", "must be < omega_max")
        _require(self.steps >= 2, "steps", "must be an integer >= 2")


@dataclass(frozen=True)
class HeatmapConfig:
    """Rectangular (gamma, omega) grid at fixed U; omega varies fastest."""

    U: float
    gamma_min: float = 0.0
    gamma_max: float = 2.0
    omega_min: float = -1.9
    omega_max: float = 1.9
    gamma_steps: int = 301
    omega_steps: int = 301

    def validate(self) -> None:
        _require(math.isfinite(self.U), "U", "must be finite")
        _require(math.isfinite(self.gamma_min) and self.gamma_min >= 0.0,
                 "gamma_min", "must be finite and >= 0")
        _require(math.isfinite(self.gamma_max) and self.gamma_max >= self.gamma_min,
                 "gamma_max", "must be finite and >= gamma_min")
        _require(math.isfinite(self.omega_min) and abs(self.omega_min) < OMEGA_LIMIT,
                 "omega_min", f"must lie strictly inside (-2, 2) (|omega| < {OMEGA_LIMIT})")
        _require(math.isfinite(self.omega_max) and abs(self.omega_max) < OMEGA_LIMIT,
                 "omega_max", f"must lie strictly inside (-2, 2) (|omega| < {OMEGA_LIMIT})")
        _require(self.omega_max >= self.omega_min, "omega_min", "must be <= omega_max")
        _require(self.gamma_steps >= 1, "gamma_steps", "must be a positive integer")
        _require(self.omega_steps >= 1, "omega_steps", "must be a positive integer")
        if self.gamma_steps > 1:
            _require(self.gamma_max > self.gamma_min, "gamma_max",
                     "must be > gamma_min for a multi-row grid")
        if self.omega_steps > 1:
            _require(self.omega_max > self.omega_min, "omega_max",
                     "must be > omega_min for a multi-column grid")


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    return np.linspace(lo, hi, steps)


def _phase_labels(deltas: list[float], gamma: float) -> list[str]:
    """Grid-resolution-aware phase labels from the discriminant samples.

    A point is labelled exceptional when |Delta| is below half the larger
    adjacent grid increment of Delta, i.e. when the zero crossing cannot
    be localized more finely than this grid. The Hermitian case gamma = 0
    is exact everywhere (Delta >= 0 with at most a touching zero).
    """
    n = len(deltas)
    labels = []
    for i, d in enumerate(deltas):
        if gamma == 0.0:
            labels.append("exact")
            continue
        steps_nearby = []
        if i > 0:
            steps_nearby.append(abs(deltas[i] - deltas[i - 1]))
        if i < n - 1:
            steps_nearby.append(abs(deltas[i + 1] - deltas[i]))
        band = 0.5 * max(steps_nearby) if steps_nearby else 0.0
        if abs(d) <= band:
            labels.append("exceptional")
        elif d > 0:
            labels.append("exact")
        else:
            labels.append("broken")
    return labels


def sweep_rows(config: SweepConfig) -> list[dict]:
    """Evaluate a sweep; one dict per grid frequency, ascending omega."""
    config.validate()
    params = validate_params(config.U, config.gamma)
    omegas = _grid(config.omega_min, config.omega_max, config.steps)
    deltas = [discriminant(params, float(om)) for om in omegas]
    labels = _phase_labels(deltas, params.gamma)

    rows = []
    for om, delta, label in zip(omegas, deltas, labels):
        om = float(om)
        wp = k_from_omega(om)
        flags = []
        if params.mirrored:
            flags.append("mirrored")  # computed for +gamma: R_L and R_R are swapped
        if params.degenerate:
            flags.append("degenerate")
        pole = abs(gamma_factor(params, wp)) <= POLE_EPS
        if pole:
            flags.append("pole")
            rows.append({
                "omega": om, "k": wp.k,
                "T": math.inf, "R_L": math.inf, "R_R": math.inf,
                "abs_s1_sq": math.inf, "abs_s2_sq": 0.0,
                "log10_abs_s1_sq": math.inf, "log10_abs_s2_sq": -math.inf,
                "delta": delta, "phase": label,
                "theta": 0.0,  # limit value; the pole is a perfect CPA zero too
                "flags": "|".join(flags),
            })
            continue
        sm = s_matrix(params, wp)
        s1, s2 = s_eigenvalues_closed(params, wp)
        m = m_matrix(params, wp)
        sigma = m.m21 if config.sigma is None else config.sigma
        theta = output_coefficient_theta(params, wp, sigma)
        a1, a2 = abs(s1) ** 2, abs(s2) ** 2
        rows.append({
            "omega": om, "k": wp.k,
            "T": abs(sm.t) ** 2, "R_L": abs(sm.r_l) ** 2, "R_R": abs(sm.r_r) ** 2,
            "abs_s1_sq": a1, "abs_s2_sq": a2,
            "log10_abs_s1_sq": math.log10(a1) if a1 > 0 else -math.inf,
            "log10_abs_s2_sq": math.log10(a2) if a2 > 0 else -math.inf,
            "delta": delta, "phase": label,
            "theta": theta,
            "flags": "|".join(flags),
        })
    return rows


def heatmap_rows(config: HeatmapConfig) -> list[dict]:
    """Evaluate a heatmap; row-major over gamma with omega varying fastest."""
    config.validate()
    gammas = _grid(config.gamma_min, config.gamma_max, config.gamma_steps)
    omegas = _grid(config.omega_min, config.omega_max, config.omega_steps)

    # Cells bordering the lasing point get a warning flag so plotting
    # tools know the neighbourhood is steep even where values are finite.
    near_g = near_o = None
    cpa = cpa_laser_point(config.U)
    if cpa is not None:
        if gammas[0] <= cpa.gamma_cpa <= gammas[-1] and omegas[0] <= cpa.omega0 <= omegas[-1]:
            near_g = int(np.argmin(np.abs(gammas - cpa.gamma_cpa)))
            near_o = int(np.argmin(np.abs(omegas - cpa.omega0)))

    rows = []
    for gi, gam in enumerate(gammas):
        params = validate_params(config.U, float(gam))
        for oi, om in enumerate(omegas):
            om = float(om)
            wp = k_from_omega(om)
            flags = []
            if near_g is not None and abs(gi - near_g) <= 1 and abs(oi - near_o) <= 1:
                flags.append("pole_adjacent")
            if abs(gamma_factor(params, wp)) <= POLE_EPS:
                rows.append({
                    "gamma": float(gam), "omega": om,
                    "log10_abs_s1_sq": math.inf, "log10_abs_s2_sq": -math.inf,
                    "flags": "|".join(["pole"] + flags),
                })
                continue
            s1, s2 = s_eigenvalues_closed(params, wp)
            a1, a2 = abs(s1) ** 2, abs(s2) ** 2
            rows.append({
                "gamma": float(gam), "omega": om,
                "log10_abs_s1_sq": math.log10(a1) if a1 > 0 else -math.inf,
                "log10_abs_s2_sq": math.log10(a2) if a2 > 0 else -math.inf,
                "flags": "|".join(flags),
            })
    return rows


def rows_to_csv(rows: list[dict], columns: tuple[str, ...]) -> str:
    """Render rows as deterministic CSV text with a header line."""
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            val = row[col]
            cells.append(val if isinstance(val, str) else format_float(val))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
