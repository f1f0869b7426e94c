"""Figure rendering for the report path (file output only, Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_sweep_figure(rows, axis: str, path: str) -> None:
    """ln(gamma1_1 * T) against the swept value: analytic line, Fock circles."""
    xs = [r.swept_value for r in rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ya = [(r.swept_value, r.ln_gamma_T_analytic) for r in rows if r.ln_gamma_T_analytic is not None]
    yf = [(r.swept_value, r.ln_gamma_T_fock) for r in rows if r.ln_gamma_T_fock is not None]
    if ya:
        ax.plot(*zip(*ya), "b-", label="barrier approximation")
    if yf:
        ax.plot(*zip(*yf), "ro", mfc="none", label="number-state")
    ax.set_xlabel(axis)
    ax.set_ylabel(r"$\ln(\gamma_1^{(1)} T)$")
    ax.set_xlim(min(xs), max(xs))
    if ya or yf:
        ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_phase_map_figure(re_vals, im_vals, codes, path: str) -> None:
    """Region codes over the complex-coupling plane with the threshold circle."""
    fig, ax = plt.subplots(figsize=(4.6, 4.0))
    mesh = ax.pcolormesh(
        re_vals, im_vals, codes, cmap="viridis", vmin=1, vmax=3, shading="nearest"
    )
    t = np.linspace(0, 2 * np.pi, 256)
    ax.plot(np.cos(t), np.sin(t), "w--", lw=0.8)
    cbar = fig.colorbar(mesh, ax=ax, ticks=[1, 2, 3])
    cbar.ax.set_yticklabels(["I", "II", "III"])
    ax.set_xlabel("Re(c)")
    ax.set_ylabel("Im(c)")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_potential_figure(xs, ys, phi_grid, path: str) -> None:
    """Real and imaginary parts of the potential over the manifold grid."""
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.8))
    for ax, part, label in (
        (axes[0], np.real(phi_grid), "Re"),
        (axes[1], np.imag(phi_grid), "Im"),
    ):
        cs = ax.contourf(xs, ys, part, levels=31, cmap="RdBu_r")
        fig.colorbar(cs, ax=ax)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_title(f"{label} of the potential")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
