"""Invariant n-quanta subspaces of the composed cycle: enumeration,
projection, spectra, and return-amplitude sweeps."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import fock
from .fock import ENGINE_DIM, LEVEL_E, LEVEL_G, Operator


@dataclass(frozen=True)
class SectorBasis:
    """Ordered basis of the n-quanta subspace: |m, g, n-m> for m = 0..n,
    then |m, e, n-m-1> for m = 0..n-1."""

    n: int
    labels: tuple[tuple[int, int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.labels)


def sector_basis(n: int) -> SectorBasis:
    if n < 0:
        raise ValueError("n must be nonnegative")
    labels = [(m, LEVEL_G, n - m) for m in range(n + 1)]
    labels += [(m, LEVEL_E, n - m - 1) for m in range(n)]
    return SectorBasis(n, tuple(labels))


def sector_indices(basis: SectorBasis, n_cold_max: int, n_warm_max: int) -> np.ndarray:
    """Flat full-space indices of the sector states, classified through the
    quanta operator's diagonal rather than label arithmetic."""
    quanta = fock.quanta_operator(n_cold_max, n_warm_max).entries.diagonal().real
    warm_dim = n_warm_max + 1
    indices = []
    for m, level, k in basis.labels:
        if m > n_cold_max or k > n_warm_max:
            raise ValueError(
                f"sector {basis.n} does not fit in cutoffs ({n_cold_max}, {n_warm_max})"
            )
        idx = (m * ENGINE_DIM + level) * warm_dim + k
        if abs(quanta[idx] - basis.n) > 1e-9:
            raise AssertionError(f"state {(m, level, k)} has wrong quanta count")
        indices.append(idx)
    return np.array(indices, dtype=int)


def leakage(op: Operator, basis: SectorBasis, n_cold_max: int, n_warm_max: int) -> float:
    """Amplitude that `op` scatters sector states out of their sector."""
    idx = sector_indices(basis, n_cold_max, n_warm_max)
    columns = op.entries[:, idx]
    complement = np.ones(op.dim, dtype=bool)
    complement[idx] = False
    return float(np.linalg.norm(columns[complement, :], ord=2))


def project(
    op: Operator,
    basis: SectorBasis,
    n_cold_max: int,
    n_warm_max: int,
    invariance_tol: float | None = None,
) -> np.ndarray:
    """(2n+1) x (2n+1) compression of a full-space operator onto the sector."""
    idx = sector_indices(basis, n_cold_max, n_warm_max)
    if invariance_tol is not None:
        leak = leakage(op, basis, n_cold_max, n_warm_max)
        if leak > invariance_tol:
            raise AssertionError(
                f"sector {basis.n} is not invariant: leakage {leak:.3e} > {invariance_tol:.1e}"
            )
    return op.entries[np.ix_(idx, idx)]


def sector_spectrum(
    op: Operator, n: int, n_cold_max: int, n_warm_max: int,
    invariance_tol: float | None = 1e-9,
) -> np.ndarray:
    """Eigenvalues of the sector block of an invariant operator."""
    block = project(op, sector_basis(n), n_cold_max, n_warm_max, invariance_tol)
    return np.linalg.eigvals(block)


def quasi_periodicity(op: Operator, state: np.ndarray, horizon: int) -> np.ndarray:
    """Return amplitudes |<psi| op^k |psi>| for k = 0..horizon.

    Uses the eigenphase decomposition of the (unitary, hence normal)
    operator, so arbitrary horizons stay numerically exact.
    """
    state = np.asarray(state, dtype=complex)
    if abs(np.linalg.norm(state) - 1.0) > 1e-9:
        raise ValueError("state must be normalized")
    t, q = scipy.linalg.schur(op.entries, output="complex")
    phases = np.angle(np.diagonal(t))
    weights = np.abs(q.conj().T @ state) ** 2
    ks = np.arange(horizon + 1)
    return np.abs(np.exp(1j * np.outer(ks, phases)) @ weights)
