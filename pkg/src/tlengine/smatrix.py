"""Analytic S-matrices of the four cycle phases, the composed cycle, and
the effective two-level form.

The valve couplings carry the sign of the model Hamiltonian (a^dag E_+ +
a E_-, and F_+ c^dag + F_- c).  With that sign the off-diagonal entries of
the Jaynes-Cummings doublet blocks are +kappa sqrt(n+1), which fixes the
sign of the B and Y diagonals relative to the mixing angles below; the
opposite coupling convention flips exactly that one sign, so it is pinned
here by the brute-force oracle rather than taken on faith.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import atan2, cos, pi, sin, sqrt

import numpy as np

from . import fock
from .fock import ENGINE_DIM, Operator, identity, tensor3
from .params import FINITE, STRONG_LIMIT, CycleParams

# Sign of B (and Y) fixed by comparing against the oracle built from the
# model Hamiltonian; see module docstring.
_B_SIGN = -1.0


@dataclass(frozen=True)
class DressedCoefficients:
    """Splitting and mixing angle of the n-th Jaynes-Cummings doublet."""

    n: int
    splitting: float  # lambda_n (cold) or xi_n (warm)
    angle: float  # theta_n (cold) or phi_n (warm)


def dressed_coefficients(side: str, n: int, params: CycleParams) -> DressedCoefficients:
    """(lambda_n, theta_n) for side="cold", (xi_n, phi_n) for side="warm"."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if side == "cold":
        kappa, detuning = params.kappa12, params.omega1 - 2 * params.mu
    elif side == "warm":
        kappa, detuning = params.kappa23, params.omega3 - 2 * params.delta
    else:
        raise ValueError(f"side must be 'cold' or 'warm', got {side!r}")
    splitting = 0.5 * sqrt(4 * kappa**2 * (n + 1) + detuning**2)
    # Principal branch; the degenerate denominator (kappa = 0, negative
    # detuning) maps to pi/2, continuous with the reciprocal form.
    angle = atan2(2 * kappa * sqrt(n + 1), 2 * splitting + detuning)
    return DressedCoefficients(n, splitting, angle)


def dressed_energies(n: int, params: CycleParams) -> tuple[float, float]:
    """Doublet energies (n + 1/2) omega1 -/+ lambda_n of the cold-side
    Jaynes-Cummings Hamiltonian."""
    coeff = dressed_coefficients("cold", n, params)
    center = (n + 0.5) * params.omega1
    return center - coeff.splitting, center + coeff.splitting


def _pair_diagonals(side: str, tau: float, params: CycleParams, n_max: int):
    """Diagonal values of (A, B, C) resp. (Z, Y, V) for n = 0..n_max."""
    cos_term = np.empty(n_max + 1)
    mix_term = np.empty(n_max + 1)
    flat_term = np.empty(n_max + 1)
    for n in range(n_max + 1):
        coeff = dressed_coefficients(side, n, params)
        s, c = sin(tau * coeff.splitting), cos(tau * coeff.splitting)
        cos_term[n] = c / (n + 1)
        mix_term[n] = _B_SIGN * s * sin(2 * coeff.angle) / sqrt(n + 1)
        flat_term[n] = s * cos(2 * coeff.angle) / (n + 1)
    return cos_term, mix_term, flat_term


def abc_operators(params: CycleParams, n_max: int) -> tuple[Operator, Operator, Operator]:
    """Cold-side diagonal operators A, B, C."""
    a_diag, b_diag, c_diag = _pair_diagonals("cold", params.tau1, params, n_max)
    return (fock.fock_diagonal(a_diag), fock.fock_diagonal(b_diag),
            fock.fock_diagonal(c_diag))


def zyv_operators(params: CycleParams, n_max: int) -> tuple[Operator, Operator, Operator]:
    """Warm-side diagonal operators Z, Y, V."""
    z_diag, y_diag, v_diag = _pair_diagonals("warm", params.tau3, params, n_max)
    return (fock.fock_diagonal(z_diag), fock.fock_diagonal(y_diag),
            fock.fock_diagonal(v_diag))


def s1(params: CycleParams, n_cold_max: int) -> Operator:
    """Phase-1 S-matrix on cold (x) engine."""
    a = fock.annihilator(n_cold_max)
    op_a, op_b, op_c = abc_operators(params, n_cold_max)
    g1 = fock.ground_projector(n_cold_max)
    i_c = identity(n_cold_max + 1)
    phase = np.exp(0.5j * params.tau1 * (params.omega1 - 2 * params.mu))
    return (
        phase * ((a.dag @ (op_a - 1j * op_c) @ a).tensor(fock.e1())
                 + 1j * (a.dag @ op_b).tensor(fock.e_plus()))
        + phase.conjugate() * (1j * (op_b @ a).tensor(fock.e_minus())
                               + (a @ a.dag @ (op_a + 1j * op_c)).tensor(fock.e2()))
        + g1.tensor(fock.e1())
        + i_c.tensor(fock.e3())
    )


def s3(params: CycleParams, n_warm_max: int) -> Operator:
    """Phase-3 S-matrix on engine (x) warm."""
    c = fock.annihilator(n_warm_max)
    op_z, op_y, op_v = zyv_operators(params, n_warm_max)
    g3 = fock.ground_projector(n_warm_max)
    i_w = identity(n_warm_max + 1)
    phase = np.exp(0.5j * params.tau3 * (params.omega3 - 2 * params.delta))
    return (
        fock.e1().tensor(i_w)
        + fock.e2().tensor(g3)
        + phase * (fock.e2().tensor(c.dag @ (op_z - 1j * op_v) @ c)
                   + 1j * fock.f_plus().tensor(c.dag @ op_y))
        + phase.conjugate() * (1j * fock.f_minus().tensor(op_y @ c)
                               + fock.e3().tensor(c @ c.dag @ (op_z + 1j * op_v)))
    )


_S2A_STRONG = np.array([[1, 0, 0], [0, 0, -1j], [0, -1j, 0]])
_S2B_STRONG = np.array([[0, 1j, 0], [1j, 0, 0], [0, 0, 1]])
_S2_STRONG = np.array([[0, 0, 1], [1j, 0, 0], [0, -1j, 0]])


def s2a(params: CycleParams) -> Operator:
    """Pulse-a S-matrix (e<->f inversion) on the engine."""
    if params.pulse_mode == STRONG_LIMIT:
        return Operator(_S2A_STRONG, (ENGINE_DIM,))
    t_a, tau = params.t_a, params.pulse_a_duration
    delta, eps = params.delta, params.eps_a
    ph = np.exp(-1j * tau * delta)
    mat = np.zeros((3, 3), dtype=complex)
    mat[0, 0] = 1.0
    mat[1:, 1:] = 1j * t_a * np.array(
        [[delta * ph, -eps * ph], [-eps * ph.conjugate(), -delta * ph.conjugate()]]
    )
    return Operator(mat, (ENGINE_DIM,))


def s2b(params: CycleParams) -> Operator:
    """Pulse-b S-matrix (g<->e inversion) on the engine."""
    if params.pulse_mode == STRONG_LIMIT:
        return Operator(_S2B_STRONG, (ENGINE_DIM,))
    t_b, tau = params.t_b, params.pulse_b_duration
    mu, eps = params.mu, params.eps_b
    ph = np.exp(-1j * tau * mu)
    mat = np.zeros((3, 3), dtype=complex)
    mat[2, 2] = 1.0
    mat[:2, :2] = 1j * t_b * np.array(
        [[mu * ph, eps * ph], [eps * ph.conjugate(), -mu * ph.conjugate()]]
    )
    return Operator(mat, (ENGINE_DIM,))


def s2(params: CycleParams) -> Operator:
    """Phase-2 S-matrix S2 = S2b S2a."""
    if params.pulse_mode == STRONG_LIMIT:
        return Operator(_S2_STRONG, (ENGINE_DIM,))
    return s2b(params) @ s2a(params)


def s4(params: CycleParams) -> Operator:
    """Phase-4 S-matrix, the inverse pulse pair: S4 = S2^dag."""
    return s2(params).dag


def _lift(params: CycleParams, n_cold_max: int, n_warm_max: int):
    i_c = identity(n_cold_max + 1)
    i_e = identity(ENGINE_DIM)
    i_w = identity(n_warm_max + 1)
    s1_full = s1(params, n_cold_max).tensor(i_w)
    s2_full = i_c.tensor(s2(params)).tensor(i_w)
    s3_full = i_c.tensor(s3(params, n_warm_max))
    return s1_full, s2_full, s3_full


def compose_cycle_product(params: CycleParams, quanta_bound: int) -> Operator:
    """Composed cycle S = S4 S3 S2 S1 as a literal operator product, on the
    full space with both cutoffs equal to the quanta bound."""
    s1_full, s2_full, s3_full = _lift(params, quanta_bound, quanta_bound)
    return s2_full.dag @ s3_full @ s2_full @ s1_full


def compose_cycle_closed_form(params: CycleParams, quanta_bound: int) -> Operator:
    """Strong-pulse closed form of the composed cycle S-matrix, written
    out as the explicit ten-term sum (independent of the phase product, so
    the two construction paths cross-check each other)."""
    if params.pulse_mode != STRONG_LIMIT:
        raise ValueError("the closed form is valid in strong-pulse mode only")
    n = quanta_bound
    a = fock.annihilator(n)
    c = fock.annihilator(n)
    op_a, op_b, op_c = abc_operators(params, n)
    op_z, op_y, op_v = zyv_operators(params, n)
    g1 = fock.ground_projector(n)
    g3 = fock.ground_projector(n)
    i_c = identity(n + 1)
    i_w = identity(n + 1)
    i_e = identity(ENGINE_DIM)
    ph1 = np.exp(0.5j * params.tau1 * (params.omega1 - 2 * params.mu))
    ph3 = np.exp(0.5j * params.tau3 * (params.omega3 - 2 * params.delta))

    cold_diag = a.dag @ (op_a - 1j * op_c) @ a  # a^dag (A - iC) a
    cold_diag_conj = a @ a.dag @ (op_a + 1j * op_c)  # a a^dag (A + iC)
    warm_diag = c.dag @ (op_z - 1j * op_v) @ c  # c^dag (Z - iV) c
    warm_diag_conj = c @ c.dag @ (op_z + 1j * op_v)  # c c^dag (Z + iV)

    return (
        tensor3(i_c, fock.e3(), i_w)
        + tensor3(g1, fock.e1(), g3)
        + ph1 * (tensor3(cold_diag, fock.e1(), g3)
                 + 1j * tensor3(a.dag @ op_b, fock.e_plus(), g3))
        + ph3 * tensor3(g1, fock.e1(), warm_diag)
        - 1j * ph3.conjugate() * tensor3(g1, fock.e_minus(), op_y @ c)
        + ph3 * ph1 * (tensor3(cold_diag, fock.e1(), warm_diag)
                       + 1j * tensor3(a.dag @ op_b, fock.e_plus(), warm_diag))
        + ph3 * ph1.conjugate() * (tensor3(op_b @ a, fock.e1(), c.dag @ op_y)
                                   - 1j * tensor3(cold_diag_conj, fock.e_plus(),
                                                  c.dag @ op_y))
        + ph3.conjugate() * ph1 * (-1j * tensor3(cold_diag, fock.e_minus(), op_y @ c)
                                   + tensor3(a.dag @ op_b, fock.e2(), op_y @ c))
        + ph3.conjugate() * ph1.conjugate() * (
            1j * tensor3(op_b @ a, fock.e_minus(), warm_diag_conj)
            + tensor3(cold_diag_conj, fock.e2(), warm_diag_conj))
    )


def compose_cycle(
    params: CycleParams, quanta_bound: int, check: bool = True, tol: float = 1e-10
) -> Operator:
    """Composed cycle S-matrix, built from the operator product and (in
    strong-pulse mode) cross-checked against the ten-term closed form
    on the retained-quanta subspace."""
    product = compose_cycle_product(params, quanta_bound)
    if check and params.pulse_mode == STRONG_LIMIT:
        closed = compose_cycle_closed_form(params, quanta_bound)
        mask = quanta_mask(quanta_bound, quanta_bound, quanta_bound)
        deviation = masked_norm(product.entries - closed.entries, mask)
        if deviation > tol:
            raise AssertionError(
                f"two-path mismatch for the composed S-matrix: |product - "
                f"closed form| = {deviation:.3e} > {tol:.1e}"
            )
    return product


def s_eff(params: CycleParams, n_cold_max: int) -> Operator:
    """Effective cycle S-matrix on cold (x) {g, e}."""
    a = fock.annihilator(n_cold_max)
    op_a, op_b, op_c = abc_operators(params, n_cold_max)
    g1 = fock.ground_projector(n_cold_max)
    p_g = Operator(np.diag([1.0, 0.0]), (2,))
    p_e = Operator(np.diag([0.0, 1.0]), (2,))
    raise_ge = Operator(np.array([[0.0, 1.0], [0.0, 0.0]]), (2,))  # |g><e|
    lower_ge = raise_ge.dag
    return (
        (g1 + a.dag @ (op_a - 1j * op_c) @ a).tensor(p_g)
        + (1j * (a.dag @ op_b)).tensor(raise_ge)
        + (1j * (op_b @ a)).tensor(lower_ge)
        + (a @ a.dag @ (op_a + 1j * op_c)).tensor(p_e)
    )


def quanta_mask(quanta_bound: int, n_cold_max: int, n_warm_max: int) -> np.ndarray:
    """Boolean mask over the full product basis selecting total quanta <=
    quanta_bound."""
    diag = fock.quanta_operator(n_cold_max, n_warm_max).entries.diagonal().real
    return diag <= quanta_bound + 0.5


def pair_mask(quanta_bound: int, n_max: int, which: str) -> np.ndarray:
    """Mask over cold (x) engine ("cold") or engine (x) warm ("warm")
    selecting the states whose doublet partners fit inside the cutoff."""
    dim = (n_max + 1) * ENGINE_DIM
    keep = np.ones(dim, dtype=bool)
    if which == "cold":
        # |n_max, e> pairs with the truncated |n_max + 1, g>
        for m in range(n_max + 1):
            for level in range(ENGINE_DIM):
                quanta = m + (1 if level == fock.LEVEL_E else 0)
                keep[m * ENGINE_DIM + level] = quanta <= quanta_bound
    elif which == "warm":
        # |f, n_max> pairs with the truncated |e, n_max + 1>
        for level in range(ENGINE_DIM):
            for k in range(n_max + 1):
                quanta = k + (2 if level == fock.LEVEL_F else 0)
                keep[level * (n_max + 1) + k] = quanta <= quanta_bound + 1
    else:
        raise ValueError("which must be 'cold' or 'warm'")
    return keep


def masked_norm(matrix: np.ndarray, mask: np.ndarray) -> float:
    """Operator norm of the compression of `matrix` onto the masked basis."""
    sub = matrix[np.ix_(mask, mask)]
    return float(np.linalg.norm(sub, ord=2))
