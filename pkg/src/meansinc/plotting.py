"""Figure rendering for cross-section sweeps. Import cost is paid only when a
plot is actually requested; the Agg backend keeps everything headless."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["dcs_figure", "save_figure"]


def dcs_figure(thetas, values, x: float, k: float):
    """Differential cross section against scattering angle, log scale.

    The log axis is the natural choice: the integrand rises like log^2(theta)
    toward the forward direction and the interesting structure spans decades.
    """
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.semilogy(thetas, values, lw=1.2)
    ax.set_xlabel(r"$\theta$ (rad)")
    ax.set_ylabel(r"$d\sigma/d\theta$  (units of $1/k$)")
    ax.set_title(f"x = {x:g}, k = {k:g}")
    ax.grid(True, which="both", alpha=0.3)
    return fig


def save_figure(fig, path: str, dpi: int = 150):
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
