"""Matplotlib renderings of zero clouds and Apéry error decay."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .zeros import SVG_COLORS  # noqa: E402

__all__ = ["plot_zero_clouds", "plot_apery_errors"]


def plot_zero_clouds(clouds, path, title=None):
    """Scatter each cloud in the complex plane and save to ``path``."""
    fig, ax = plt.subplots(figsize=(6, 6))
    for cloud in clouds:
        pts = [complex(z) for z in cloud.points]
        ax.scatter([z.real for z in pts], [z.imag for z in pts], s=8,
                   color=SVG_COLORS.get(cloud.label), label=cloud.label)
    ax.axhline(0, color="#bbb", lw=0.5)
    ax.axvline(0, color="#bbb", lw=0.5)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    if title:
        ax.set_title(title)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_apery_errors(sequence, path):
    """Semilog plot of ``|zeta(3) - approximant|`` against ``n``."""
    ns = [s.n for s in sequence]
    errs = [float(s.abs_error) for s in sequence]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ns, errs, "o-")
    ax.set_xlabel("n")
    ax.set_ylabel("absolute error")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
