"""Figure rendering for sweep and heatmap results.

Optional companion to the CSV output: the CLI's ``--plot`` flag feeds
the computed rows straight into these helpers and writes a PNG next to
the data file. Pole rows are drawn as gaps rather than infinities.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _finite(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr[~np.isfinite(arr)] = np.nan
    return arr


def render_sweep_figure(rows: list[dict], path: str, title: str = "") -> None:
    """Two-panel sweep figure: eigenvalue moduli and T on top, theta below."""
    omega = np.array([r["omega"] for r in rows])
    log_s1 = _finite([r["log10_abs_s1_sq"] for r in rows])
    log_s2 = _finite([r["log10_abs_s2_sq"] for r in rows])
    t_coef = _finite([r["T"] for r in rows])
    theta = _finite([r["theta"] for r in rows])

    fig, (ax_top, ax_bot) = plt.subplots(2, 1, figsize=(7.0, 6.0), sharex=True)
    ax_top.plot(omega, log_s1, "b-.", lw=1.2, label=r"$\log_{10}|s_1|^2$")
    ax_top.plot(omega, log_s2, "r--", lw=1.2, label=r"$\log_{10}|s_2|^2$")
    ax_t = ax_top.twinx()
    ax_t.plot(omega, t_coef, "g-", lw=1.0, label=r"$T$")
    ax_t.axhline(1.0, color="0.6", lw=0.6, ls=":")
    ax_t.set_ylabel(r"$T$")
    ax_top.set_ylabel(r"$\log_{10}|s_{1,2}|^2$")
    handles, labels = ax_top.get_legend_handles_labels()
    handles_t, labels_t = ax_t.get_legend_handles_labels()
    ax_top.legend(handles + handles_t, labels + labels_t, loc="upper right", fontsize=8)
    if title:
        ax_top.set_title(title)

    positive = theta[np.isfinite(theta) & (theta > 0)]
    ax_bot.plot(omega, theta, "k-", lw=1.0)
    if positive.size and positive.min() < 1e-3:
        ax_bot.set_yscale("log")
    ax_bot.set_xlabel(r"$\omega$")
    ax_bot.set_ylabel(r"$\Theta$")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_heatmap_figure(rows: list[dict], path: str, title: str = "") -> None:
    """Heatmap of log10|s1|^2 over the (omega, gamma) grid."""
    gammas = sorted({r["gamma"] for r in rows})
    omegas = sorted({r["omega"] for r in rows})
    grid = np.full((len(gammas), len(omegas)), np.nan)
    g_index = {g: i for i, g in enumerate(gammas)}
    o_index = {o: i for i, o in enumerate(omegas)}
    for r in rows:
        v = r["log10_abs_s1_sq"]
        grid[g_index[r["gamma"]], o_index[r["omega"]]] = v if math.isfinite(v) else np.nan

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    mesh = ax.pcolormesh(np.array(omegas), np.array(gammas), grid, shading="nearest",
                         cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=r"$\log_{10}|s_1|^2$")
    ax.set_xlabel(r"$\omega$")
    ax.set_ylabel(r"$\gamma$")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
