"""Figure rendering for the report paths: trajectory and spectrum plots
written to files next to the delimited output."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .output import Table


def _column(table: Table, name: str) -> np.ndarray:
    idx = table.columns.index(name)
    return np.array([float(row[idx]) for row in table.rows])


def plot_trajectory(table: Table, path: str) -> None:
    """Four panels over the cycle index: oscillator energies, engine-level
    populations, subsystem entropies, and the return amplitude."""
    cycles = _column(table, "cycle")
    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)

    ax = axes[0, 0]
    ax.plot(cycles, _column(table, "cold_energy[hbar=1]"), label="cold")
    ax.plot(cycles, _column(table, "warm_energy[hbar=1]"), label="warm")
    ax.set_ylabel("oscillator energy (hbar=1)")
    ax.legend()

    ax = axes[0, 1]
    for name, label in (("p_g[1]", "g"), ("p_e[1]", "e"), ("p_f[1]", "f")):
        ax.plot(cycles, _column(table, name), label=label)
    ax.set_ylabel("engine population")
    ax.set_ylim(-0.05, 1.05)
    ax.legend()

    ax = axes[1, 0]
    for name, label in (
        ("entropy_cold[nat]", "cold"),
        ("entropy_engine[nat]", "engine"),
        ("entropy_warm[nat]", "warm"),
    ):
        ax.plot(cycles, _column(table, name), label=label)
    ax.set_xlabel("cycle")
    ax.set_ylabel("entanglement entropy (nat)")
    ax.legend()

    ax = axes[1, 1]
    ax.plot(cycles, _column(table, "return_amplitude[1]"), color="tab:purple")
    ax.set_xlabel("cycle")
    ax.set_ylabel("|<initial|state>|")
    ax.set_ylim(-0.05, 1.05)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_spectrum(table: Table, path: str) -> None:
    """Two panels over n: the paired transfer eigenvalues with the pulse
    work eigenvalues, and the cycle eigenphases of each invariant sector."""
    n = _column(table, "n")
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(8, 7), sharex=True)

    top.plot(n, _column(table, "rho_plus[quanta]"), "o-", label=r"transfer $+$")
    top.plot(n, _column(table, "rho_minus[quanta]"), "o-", label=r"transfer $-$")
    top.plot(n, _column(table, "work_plus[hbar=1]"), "s--", label=r"pulse work $+$")
    top.plot(n, _column(table, "work_minus[hbar=1]"), "s--", label=r"pulse work $-$")
    top.set_ylabel("doublet eigenvalue")
    top.legend()

    idx = table.columns.index("sector_eigenphases[rad]")
    for row in table.rows:
        phases = [float(p) for p in str(row[idx]).split(";") if p]
        bottom.plot([float(row[0])] * len(phases), phases, "k.", markersize=4)
    bottom.set_xlabel("quanta n")
    bottom.set_ylabel("sector eigenphase (rad)")
    bottom.set_ylim(-np.pi * 1.05, np.pi * 1.05)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
