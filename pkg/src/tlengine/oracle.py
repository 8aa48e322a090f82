"""Brute-force S-matrices: assemble the full Hamiltonian of each cycle
phase and exponentiate it.  This module is the ground truth against which
every analytic expression is checked.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock
from .fock import Operator, identity, tensor3
from .params import CycleParams

PHASES = ("1", "2a", "2b", "3")


@dataclass(frozen=True)
class PhaseSpec:
    """One piecewise-constant phase of the cycle: which term is active,
    and for how long."""

    phase: str
    duration: float

    def __post_init__(self):
        if self.phase not in PHASES:
            raise ValueError(f"phase must be one of {PHASES}, got {self.phase!r}")
        if self.duration < 0:
            raise ValueError("duration must be nonnegative")


def phase_spec(phase: str, params: CycleParams) -> PhaseSpec:
    duration = {
        "1": params.tau1,
        "2a": params.pulse_a_duration,
        "2b": params.pulse_b_duration,
        "3": params.tau3,
    }[phase]
    return PhaseSpec(phase, duration)


def free_hamiltonian(params: CycleParams, n_cold_max: int, n_warm_max: int) -> Operator:
    """H0 = omega1 a^dag a + H_gef + omega3 c^dag c on the full space."""
    i_c = identity(n_cold_max + 1)
    i_w = identity(n_warm_max + 1)
    i_e = identity(fock.ENGINE_DIM)
    return (
        params.omega1 * tensor3(fock.number_op(n_cold_max), i_e, i_w)
        + tensor3(i_c, fock.h_gef(params.mu, params.delta), i_w)
        + params.omega3 * tensor3(i_c, i_e, fock.number_op(n_warm_max))
    )


def _pulse_term(phase: str, params: CycleParams) -> Operator:
    # Pulse a drives e<->f through Lambda_6, pulse b drives g<->e through
    # Lambda_1; the signs are fixed by requiring that exponentiation
    # reproduce the closed-form finite S_2a and S_2b matrices.
    if phase == "2a":
        return params.eps_a * fock.gell_mann(6)
    return -params.eps_b * fock.gell_mann(1)


def assemble_hamiltonian(
    spec: PhaseSpec, params: CycleParams, n_cold_max: int, n_warm_max: int
) -> Operator:
    """Full Hamiltonian active during one phase.  Hermitian by construction."""
    i_c = identity(n_cold_max + 1)
    i_w = identity(n_warm_max + 1)
    i_e = identity(fock.ENGINE_DIM)
    h = free_hamiltonian(params, n_cold_max, n_warm_max)
    if spec.phase == "1":
        a = fock.annihilator(n_cold_max)
        h = h + params.kappa12 * (
            tensor3(a.dag, fock.e_plus(), i_w) + tensor3(a, fock.e_minus(), i_w)
        )
    elif spec.phase == "3":
        c = fock.annihilator(n_warm_max)
        h = h + params.kappa23 * (
            tensor3(i_c, fock.f_plus(), c.dag) + tensor3(i_c, fock.f_minus(), c)
        )
    else:
        h = h + tensor3(i_c, _pulse_term(spec.phase, params), i_w)
    return h


def unitary_exponential(h: Operator, t: float) -> Operator:
    """exp(-i t H) for Hermitian H, via eigendecomposition."""
    mat = h.entries
    if not np.allclose(mat, mat.conj().T, atol=1e-12):
        raise ValueError("unitary_exponential requires a Hermitian operator")
    w, v = np.linalg.eigh(mat)
    return Operator((v * np.exp(-1j * t * w)) @ v.conj().T, h.signature)


def oracle_smatrix(
    spec: PhaseSpec, params: CycleParams, n_cold_max: int, n_warm_max: int
) -> Operator:
    """S_phase = exp(i tau H0) exp(-i tau H) on the full space."""
    h0 = free_hamiltonian(params, n_cold_max, n_warm_max)
    h = assemble_hamiltonian(spec, params, n_cold_max, n_warm_max)
    forward = unitary_exponential(h, spec.duration)
    unwind = unitary_exponential(h0, -spec.duration)
    return unwind @ forward


def oracle_cycle(params: CycleParams, n_cold_max: int, n_warm_max: int) -> Operator:
    """Product S4 S3 S2b S2a S1, every factor from the oracle."""
    s1 = oracle_smatrix(phase_spec("1", params), params, n_cold_max, n_warm_max)
    s2a = oracle_smatrix(phase_spec("2a", params), params, n_cold_max, n_warm_max)
    s2b = oracle_smatrix(phase_spec("2b", params), params, n_cold_max, n_warm_max)
    s2 = s2b @ s2a
    s3 = oracle_smatrix(phase_spec("3", params), params, n_cold_max, n_warm_max)
    return s2.dag @ s3 @ s2 @ s1
