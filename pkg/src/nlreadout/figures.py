"""Matplotlib rendering for the report pipelines.

Every renderer takes plain arrays, writes one PNG next to the CSV data it
illustrates, and returns the path.  Agg backend only; nothing here opens
a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def render_sweep(path, curves, delta_c, kappa):
    """Photon number and cavity pull vs drive strength, one curve per state.

    ``curves`` maps a state label to (epsilon_db, n, chi_mhz).
    """
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
    for label, (db, n, chi) in curves.items():
        ax1.semilogy(db, np.maximum(n, 1e-12), label=f"|{label}>")
        ax2.plot(db, chi, label=f"|{label}>")
    ax1.set_ylabel("photon number n")
    ax1.legend(fontsize=8)
    ax1.set_title(f"drive response at delta_c = {delta_c:g} MHz, kappa = {kappa:g} MHz")
    ax2.set_ylabel("cavity pull chi(n) [MHz]")
    ax2.set_xlabel("drive strength 20 log10(epsilon / MHz) [dB]")
    ax2.axhline(0.0, color="gray", lw=0.6)
    return _finish(fig, path)


def render_borders(path, curves, borders, kappa):
    """Critical drive vs detuning per state with instability borders.

    ``curves`` maps label -> (delta_c_mhz, epsilon2_mhz with NaN where no
    bifurcation); ``borders`` maps label -> border delta_c.
    """
    fig, ax = plt.subplots(figsize=(7, 5))
    for label, (dc, eps2) in curves.items():
        finite = np.isfinite(eps2)
        line, = ax.plot(dc[finite], 20 * np.log10(eps2[finite]), label=f"|{label}>")
        if label in borders:
            ax.axvline(borders[label], color=line.get_color(), ls=":", lw=0.8)
    ax.set_xlabel("delta_c [MHz]")
    ax.set_ylabel("critical drive 20 log10(epsilon_2 / MHz) [dB]")
    ax.set_title(f"bistability thresholds, kappa = {kappa:g} MHz")
    ax.legend(fontsize=8)
    return _finish(fig, path)


def render_table(path, labels, ours_db, reference_db):
    """Bar comparison of computed vs published critical drives."""
    x = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(x - 0.2, ours_db, width=0.4, label="computed")
    ax.bar(x + 0.2, reference_db, width=0.4, label="published")
    ax.set_xticks(x, [f"|{l}>" for l in labels])
    ax.set_ylabel("20 log10(epsilon_2 / MHz) [dB]")
    ax.legend()
    return _finish(fig, path)


def render_gamma_phi(path, kappa, closed_khz, definitional_khz, reference_khz):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(kappa, closed_khz, label="closed form")
    ax.plot(kappa, definitional_khz, ls="--", label="from steady amplitudes")
    ax.axhline(reference_khz, color="gray", lw=0.8, label="published value")
    ax.set_xlabel("kappa [MHz]")
    ax.set_ylabel("|Gamma_Phi| [kHz]")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    return _finish(fig, path)


def render_coefficients(path, n, channels, title):
    """Channel coefficients vs photon number (log-x)."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, values in channels.items():
        ax.semilogx(np.maximum(n, 1e-3), values, label=name)
    ax.set_xlabel("photon number n")
    ax.set_ylabel("coefficient / base rate")
    ax.set_title(title)
    ax.legend(fontsize=8, ncol=2)
    return _finish(fig, path)
