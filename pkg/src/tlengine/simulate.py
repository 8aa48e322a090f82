"""Multi-cycle trajectories: initial-state construction, repeated cycle
application through eigenphase powers, and per-cycle observables."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import energy, fock, smatrix
from .fock import ENGINE_DIM, Operator
from .params import CycleParams

NORM_TOL = 1e-12


@dataclass(frozen=True)
class CycleRecord:
    """Observables of the state after a given number of cycles.

    Energies are omega * <number>; entropies are von Neumann entropies of
    the single-factor reductions, natural log; return_amplitude is
    |<initial|state>|."""

    cycle: int
    cold_energy: float
    warm_energy: float
    p_g: float
    p_e: float
    p_f: float
    total_quanta: float
    entropy_cold: float
    entropy_engine: float
    entropy_warm: float
    return_amplitude: float

    FIELDS = (
        "cycle", "cold_energy", "warm_energy", "p_g", "p_e", "p_f",
        "total_quanta", "entropy_cold", "entropy_engine", "entropy_warm",
        "return_amplitude",
    )

    def as_row(self) -> list[float]:
        return [getattr(self, name) for name in self.FIELDS]


def _check_norm(state: np.ndarray):
    if abs(np.linalg.norm(state) - 1.0) > 1e-9:
        raise ValueError("state is not normalized")


def make_initial_state(spec, params: CycleParams, quanta_bound: int) -> np.ndarray:
    """Build a normalized state on the full space with both cutoffs equal
    to the quanta bound.

    spec is one of
      ("product", m, level, k)
      ("superposition", [(amplitude, (m, level, k)), ...])
      ("transfer_eigvec", n, sign, k)  -- eigenvector of D with eigenvalue
        sign * sin(tau1 lambda_n) sin(2 theta_n), warm factor in |k>.
    """
    dims = (quanta_bound + 1, ENGINE_DIM, quanta_bound + 1)
    quanta = fock.quanta_operator(quanta_bound, quanta_bound).entries.diagonal().real
    kind = spec[0]
    if kind == "product":
        _, m, level, k = spec
        state = fock.basis_state(dims, (m, level, k))
    elif kind == "superposition":
        _, components = spec
        state = np.zeros(np.prod(dims), dtype=complex)
        for amplitude, occupations in components:
            state += complex(amplitude) * fock.basis_state(dims, tuple(occupations))
        norm = np.linalg.norm(state)
        if norm < NORM_TOL:
            raise ValueError("superposition spec is not normalizable")
        state = state / norm
    elif kind == "transfer_eigvec":
        _, n, sign, k = spec
        if n + 1 > quanta_bound:
            raise ValueError("transfer eigenvector exceeds the quanta bound")
        entry = energy.transfer_spectrum(n, params)
        vec = entry.eigenvector(sign, normalized=True)
        state = vec[0] * fock.basis_state(dims, (n + 1, fock.LEVEL_G, k)) \
            + vec[1] * fock.basis_state(dims, (n, fock.LEVEL_E, k))
    else:
        raise ValueError(f"unknown initial-state spec kind {kind!r}")
    support = np.abs(state) > 0
    if np.any(quanta[support] > quanta_bound + 0.5):
        raise ValueError("initial state has support above the quanta bound")
    return state


def step_cycle(state: np.ndarray, s: Operator) -> np.ndarray:
    """One cycle: state -> S state."""
    _check_norm(state)
    out = s.entries @ state
    if abs(np.linalg.norm(out) - 1.0) > 1e-9:
        raise AssertionError("cycle map failed to preserve the norm")
    return out


def _entropy(rho: np.ndarray) -> float:
    eigenvalues = np.linalg.eigvalsh(rho)
    eigenvalues = np.clip(eigenvalues.real, 0.0, None)
    positive = eigenvalues[eigenvalues > NORM_TOL]
    return float(-(positive * np.log(positive)).sum() + 0.0)


def observe(
    state: np.ndarray,
    params: CycleParams,
    quanta_bound: int,
    cycle: int = 0,
    initial: np.ndarray | None = None,
) -> CycleRecord:
    _check_norm(state)
    dim = quanta_bound + 1
    psi = state.reshape(dim, ENGINE_DIM, dim)
    rho_cold = np.einsum("abc,dbc->ad", psi, psi.conj())
    rho_engine = np.einsum("abc,adc->bd", psi, psi.conj())
    rho_warm = np.einsum("abc,abd->cd", psi, psi.conj())
    occupations = np.arange(dim)
    n_cold = float(np.real(rho_cold.diagonal() @ occupations))
    n_warm = float(np.real(rho_warm.diagonal() @ occupations))
    populations = np.real(rho_engine.diagonal())
    reference = state if initial is None else initial
    return CycleRecord(
        cycle=cycle,
        cold_energy=params.omega1 * n_cold,
        warm_energy=params.omega3 * n_warm,
        p_g=float(populations[0]),
        p_e=float(populations[1]),
        p_f=float(populations[2]),
        total_quanta=n_cold + n_warm + float(populations @ np.array([0.0, 1.0, 2.0])),
        entropy_cold=_entropy(rho_cold),
        entropy_engine=_entropy(rho_engine),
        entropy_warm=_entropy(rho_warm),
        return_amplitude=float(abs(np.vdot(reference, state))),
    )


def run(
    initial: np.ndarray,
    params: CycleParams,
    quanta_bound: int,
    n_cycles: int,
    s: Operator | None = None,
) -> list[CycleRecord]:
    """Apply the composed cycle n_cycles times, recording observables after
    every cycle (the first record is the initial state itself).

    The composed S is eigenphase-decomposed once, so each cycle is an exact
    unitary power; norm and quanta drift stay at rounding level for any
    cycle count.
    """
    if n_cycles < 0:
        raise ValueError("n_cycles must be nonnegative")
    _check_norm(initial)
    if s is None:
        s = smatrix.compose_cycle(params, quanta_bound, check=False)
    t, q = scipy.linalg.schur(s.entries, output="complex")
    phases = np.angle(np.diagonal(t))
    coefficients = q.conj().T @ initial
    records = [observe(initial, params, quanta_bound, 0, initial)]
    for k in range(1, n_cycles + 1):
        state = q @ (np.exp(1j * k * phases) * coefficients)
        records.append(observe(state, params, quanta_bound, k, initial))
    return records
