"""Matplotlib rendering for the CLI report paths.

Each function takes already-computed data and writes one PNG next to the
delimited output.  matplotlib is imported lazily with the Agg backend so
headless runs and non-plotting library use never touch a display.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_period_curve(path: Path, energies, l_quad, l_return, sign_label: str) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(energies, l_quad, "-", lw=1.5, label="quadrature")
    ax.plot(energies, l_return, "o", ms=3.5, mfc="none", label="return map")
    ax.axhline(2.0 * np.pi, color="0.6", lw=0.8, ls="--")
    ax.set_xlabel("orbit energy e")
    ax.set_ylabel("minimal period L(e)")
    ax.set_title(f"Period function, {sign_label} sign")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_phase_portrait(path: Path, orbits, separatrix, sign_label: str) -> Path:
    """orbits: list of (energy, samples); separatrix: samples or None."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.4, 5.0))
    for e, pts in orbits:
        ax.plot(pts[:, 0], pts[:, 1], lw=1.2, label=f"e = {e:.4g}")
    if separatrix is not None:
        ax.plot(separatrix[:, 0], separatrix[:, 1], "k--", lw=1.0, label="separatrix")
    ax.set_xlabel("y")
    ax.set_ylabel("y'")
    ax.set_title(f"Phase portrait, {sign_label} sign")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_breather_slice(path: Path, rs, ts, psi: np.ndarray) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    extent = (ts[0], ts[-1], rs[0], rs[-1])
    im = ax.imshow(psi, origin="lower", aspect="auto", extent=extent, cmap="RdBu_r")
    fig.colorbar(im, ax=ax, label="psi(r, t)")
    ax.set_xlabel("t")
    ax.set_ylabel("r")
    ax.set_title("Breather amplitude")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_decay_fit(path: Path, rs, envelope, slope: float, intercept: float) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    keep = np.asarray(envelope) > 0.0
    rs = np.asarray(rs)[keep]
    env = np.asarray(envelope)[keep]
    ax.semilogy(rs, env, "o", ms=3.5, label="envelope sup_t |psi|")
    ax.semilogy(rs, np.exp(intercept + slope * rs), "-", lw=1.2,
                label=f"fit rate = {-slope:.3g}")
    ax.set_xlabel("r")
    ax.set_ylabel("amplitude")
    ax.set_title("Envelope decay")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_residual_convergence(path: Path, reports) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for rep in reports:
        ax.loglog(rep.steps, rep.max_norms, "o-", ms=4,
                  label=f"{rep.kind} (order {rep.order:.2f})")
    ax.set_xlabel("step size")
    ax.set_ylabel("max residual")
    ax.set_title("Finite-difference residual convergence")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_expansion_fit(path: Path, offsets, m_values, slope_info: str) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.loglog(offsets, m_values, "o", ms=3.5)
    ax.set_xlabel("|s - 2*pi|")
    ax.set_ylabel("M(s)")
    ax.set_title(f"Inverse period map near the endpoint ({slope_info})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
