"""Energy accounting for the cycle: the transfer operator D, the per-phase
work operators, their closed-form spectra, and the flow classification of
the composed S-matrix terms.

The phase-1 work operator is taken as S1^dag H0 S1 - H0, the same
conjugation pattern as the other three phases; this is what the closed
form below equals (the inverted conjugation S1 H0 S1^dag - H0 differs by
a similarity transform and has the same spectrum).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin

import numpy as np

from . import fock, smatrix
from .fock import ENGINE_DIM, Operator, identity, tensor3
from .params import STRONG_LIMIT, CycleParams
from .smatrix import masked_norm


def _mixing(side: str, n: int, tau: float, params: CycleParams):
    coeff = smatrix.dressed_coefficients(side, n, params)
    s, c = sin(tau * coeff.splitting), cos(tau * coeff.splitting)
    return s * sin(2 * coeff.angle), s * cos(2 * coeff.angle), c


@dataclass(frozen=True)
class TransferSpectrumEntry:
    """Closed-form eigenpair of the transfer operator D on the doublet
    span{|n+1, g>, |n, e>}.

    rho_plus/rho_minus are the paired eigenvalues +-sin(tau1 lambda_n)
    sin(2 theta_n).  The (unnormalized) eigenvector for rho_plus is
    (u, v_plus), for rho_minus (u, v_minus); the v sign convention follows
    the model Hamiltonian's coupling sign (see smatrix module docstring).
    """

    n: int
    rho_plus: float
    rho_minus: float
    u: complex
    v_plus: complex
    v_minus: complex

    def eigenvector(self, sign: int, normalized: bool = False) -> np.ndarray:
        v = self.v_plus if sign > 0 else self.v_minus
        vec = np.array([self.u, v], dtype=complex)
        return vec / np.linalg.norm(vec) if normalized else vec


def transfer_spectrum(n: int, params: CycleParams) -> TransferSpectrumEntry:
    if n < 0:
        raise ValueError("n must be nonnegative")
    mix, flat, c = _mixing("cold", n, params.tau1, params)
    u = flat - 1j * c
    return TransferSpectrumEntry(
        n=n, rho_plus=mix, rho_minus=-mix, u=u, v_plus=1 + mix, v_minus=-1 + mix
    )


def transfer_operator_cold_engine(params: CycleParams, n_max: int) -> Operator:
    """Closed form of D on cold (x) engine (the warm factor is trivial)."""
    a = fock.annihilator(n_max)
    op_a, op_b, op_c = smatrix.abc_operators(params, n_max)
    return (
        (a @ a.dag @ op_b @ op_b).tensor(fock.e2())
        - (a.dag @ op_b @ op_b @ a).tensor(fock.e1())
        + (1j * (a.dag @ a @ a.dag @ (op_a + 1j * op_c) @ op_b)).tensor(fock.e_plus())
        - (1j * ((op_a - 1j * op_c) @ op_b @ a @ a.dag @ a)).tensor(fock.e_minus())
    )


def transfer_operator(
    params: CycleParams, quanta_bound: int, check: bool = True, tol: float = 1e-10
) -> Operator:
    """Transfer operator D = S^dag a^dag a S - a^dag a on the full space,
    cross-checked against the conjugation of the composed cycle."""
    if params.pulse_mode != STRONG_LIMIT:
        raise ValueError("the closed form of D assumes strong-pulse mode")
    n = quanta_bound
    closed = transfer_operator_cold_engine(params, n).tensor(identity(n + 1))
    if check:
        s = smatrix.compose_cycle(params, n, check=False)
        num_cold = tensor3(fock.number_op(n), identity(ENGINE_DIM), identity(n + 1))
        conjugated = s.dag @ num_cold @ s - num_cold
        mask = smatrix.quanta_mask(n, n, n)
        deviation = masked_norm(conjugated.entries - closed.entries, mask)
        if deviation > tol:
            raise AssertionError(
                f"transfer-operator two-path mismatch: {deviation:.3e} > {tol:.1e}"
            )
    return closed


@dataclass(frozen=True)
class WorkOperators:
    """Per-phase energy-change operators, for the cycle ordering that
    starts with the pump-up pulses (phase 2, 3, 4, then 1)."""

    phase1: Operator  # on cold (x) engine
    phase2: Operator  # on engine
    phase3: Operator  # on engine (x) warm
    phase4: Operator  # on engine (x) warm


def work_phase2(params: CycleParams) -> Operator:
    """Strong-pulse pump-up work: 2 diag(mu, delta, -mu-delta)."""
    return Operator(
        2 * np.diag([params.mu, params.delta, -params.mu - params.delta]),
        (ENGINE_DIM,),
    )


def work_phase1(params: CycleParams, n_max: int) -> Operator:
    a = fock.annihilator(n_max)
    op_a, op_b, op_c = smatrix.abc_operators(params, n_max)
    w = params.omega1 - 2 * params.mu
    return (
        w * ((op_b @ op_b @ a @ a.dag).tensor(fock.e2())
             - (a.dag @ op_b @ op_b @ a).tensor(fock.e1()))
        + (1j * w) * (a.dag @ op_b @ a @ a.dag @ (op_a + 1j * op_c)).tensor(fock.e_plus())
        - (1j * w) * (op_b @ a @ a.dag @ (op_a - 1j * op_c) @ a).tensor(fock.e_minus())
    )


def work_phase3(params: CycleParams, n_max: int) -> Operator:
    c = fock.annihilator(n_max)
    op_z, op_y, op_v = smatrix.zyv_operators(params, n_max)
    w = params.omega3 - 2 * params.delta
    return (
        w * (fock.e2().tensor(c @ c.dag @ op_y @ op_y)
             - fock.e1().tensor(c.dag @ op_y @ op_y @ c))
        - (1j * w) * fock.e_plus().tensor(c.dag @ (op_z + 1j * op_v) @ c @ c.dag @ op_y)
        + (1j * w) * fock.e_minus().tensor((op_z - 1j * op_v) @ c @ c.dag @ op_y @ c)
    )


def work_phase4(params: CycleParams, n_max: int) -> Operator:
    c = fock.annihilator(n_max)
    op_z, op_y, op_v = smatrix.zyv_operators(params, n_max)
    i_w = identity(n_max + 1)
    md = params.mu - params.delta
    return (
        -1 * work_phase2(params).tensor(i_w)
        + (2 * md) * (fock.e1().tensor(c.dag @ op_y @ op_y @ c)
                      - fock.e2().tensor(op_y @ op_y @ c @ c.dag))
        + (2j * md) * (
            fock.e_plus().tensor(c.dag @ (op_z + 1j * op_v) @ c @ c.dag @ op_y)
            - fock.e_minus().tensor(op_y @ c @ c.dag @ (op_z - 1j * op_v) @ c))
    )


def _work_definitions(params: CycleParams, n_max: int):
    """The four operators rebuilt from conjugations of H0 by the phase
    S-matrices (the independent route)."""
    i_e = identity(ENGINE_DIM)
    i_w = identity(n_max + 1)
    h_eng = fock.h_gef(params.mu, params.delta)

    s1 = smatrix.s1(params, n_max)
    h0_ce = (params.omega1 * fock.number_op(n_max)).tensor(i_e) \
        + identity(n_max + 1).tensor(h_eng)
    de1 = s1.dag @ h0_ce @ s1 - h0_ce

    s2_engine = smatrix.s2(params)
    de2 = s2_engine.dag @ h_eng @ s2_engine - h_eng

    s2_ew = s2_engine.tensor(i_w)
    s3 = smatrix.s3(params, n_max)
    h0_ew = h_eng.tensor(i_w) + i_e.tensor(params.omega3 * fock.number_op(n_max))
    de3 = s2_ew.dag @ (s3.dag @ h0_ew @ s3 - h0_ew) @ s2_ew

    s3s2 = s3 @ s2_ew
    de4 = s3s2.dag @ (s2_ew @ h0_ew @ s2_ew.dag - h0_ew) @ s3s2
    return de1, de2, de3, de4


def _column_masked_norm(diff: np.ndarray, mask: np.ndarray) -> float:
    return float(np.linalg.norm(diff[:, mask], ord=2))


def work_operators(
    params: CycleParams, n_max: int, check: bool = True, tol: float = 1e-10
) -> WorkOperators:
    """All four work operators from their closed forms, cross-checked
    against the conjugation definitions on the truncation-safe states."""
    if params.pulse_mode != STRONG_LIMIT:
        raise ValueError("the closed forms assume strong-pulse mode")
    ops = WorkOperators(
        phase1=work_phase1(params, n_max),
        phase2=work_phase2(params),
        phase3=work_phase3(params, n_max),
        phase4=work_phase4(params, n_max),
    )
    if check:
        de1, de2, de3, de4 = _work_definitions(params, n_max)
        mask_cold = smatrix.pair_mask(n_max, n_max, "cold")
        quanta_ew = np.add.outer(np.arange(ENGINE_DIM), np.arange(n_max + 1)).ravel()
        mask_warm = quanta_ew <= n_max  # headroom for S2's level shuffle
        checks = [
            ("phase 1", _column_masked_norm((de1 - ops.phase1).entries, mask_cold)),
            ("phase 2", float(np.abs((de2 - ops.phase2).entries).max())),
            ("phase 3", _column_masked_norm((de3 - ops.phase3).entries, mask_warm)),
            ("phase 4", _column_masked_norm((de4 - ops.phase4).entries, mask_warm)),
        ]
        for name, deviation in checks:
            if deviation > tol:
                raise AssertionError(
                    f"work-operator mismatch ({name}): closed form deviates from "
                    f"definition by {deviation:.3e} > {tol:.1e}"
                )
    return ops


def pulse_work_spectrum(n: int, params: CycleParams) -> tuple[float, float]:
    """Paired eigenvalues of (dE2 + dE4) / (2 (mu - delta)) on the doublet
    span{|g, n+1>, |e, n>}: +-sin(tau3 xi_n) sin(2 phi_n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    mix, _, _ = _mixing("warm", n, params.tau3, params)
    return mix, -mix


FLOW_NONE = "none"
FLOW_TOWARD_ENGINE = "toward_engine"
FLOW_AWAY_FROM_ENGINE = "away_from_engine"

_COLD_ARROW = {FLOW_NONE: "---", FLOW_TOWARD_ENGINE: "->", FLOW_AWAY_FROM_ENGINE: "<-"}
_WARM_ARROW = {FLOW_NONE: "---", FLOW_TOWARD_ENGINE: "<-", FLOW_AWAY_FROM_ENGINE: "->"}


@dataclass(frozen=True)
class FlowLabel:
    """Energy-flow direction of one monomial of the composed S-matrix.

    cold_flow reads relative to the cold oscillator's quanta (toward the
    engine = the monomial annihilates a cold quantum); warm_flow relative
    to the warm oscillator (away from the engine = it creates a warm
    quantum)."""

    term: str
    cold_flow: str
    warm_flow: str

    @property
    def arrows(self) -> tuple[str, str]:
        return _COLD_ARROW[self.cold_flow], _WARM_ARROW[self.warm_flow]


# The eight monomials of the composed S-matrix, with their expected flows.
_TABLE_ROWS = (
    ("a'(A-iC)a x E1 x c'(Z-iV)c", FLOW_NONE, FLOW_NONE),
    ("a'B x E+ x c'(Z-iV)c", FLOW_AWAY_FROM_ENGINE, FLOW_NONE),
    ("Ba x E1 x c'Y", FLOW_TOWARD_ENGINE, FLOW_AWAY_FROM_ENGINE),
    ("aa'(A+iC) x E+ x c'Y", FLOW_NONE, FLOW_AWAY_FROM_ENGINE),
    ("a'(A-iC)a x E- x Yc", FLOW_NONE, FLOW_TOWARD_ENGINE),
    ("a'B x E2 x Yc", FLOW_AWAY_FROM_ENGINE, FLOW_TOWARD_ENGINE),
    ("Ba x E- x cc'(Z+iV)", FLOW_TOWARD_ENGINE, FLOW_NONE),
    ("aa'(A+iC) x E2 x cc'(Z+iV)", FLOW_NONE, FLOW_NONE),
)


def expected_flow_table() -> tuple[FlowLabel, ...]:
    return tuple(FlowLabel(*row) for row in _TABLE_ROWS)


def _monomials(params: CycleParams, n_max: int):
    a = fock.annihilator(n_max)
    c = fock.annihilator(n_max)
    op_a, op_b, op_c = smatrix.abc_operators(params, n_max)
    op_z, op_y, op_v = smatrix.zyv_operators(params, n_max)
    cold_diag = a.dag @ (op_a - 1j * op_c) @ a
    cold_diag_conj = a @ a.dag @ (op_a + 1j * op_c)
    warm_diag = c.dag @ (op_z - 1j * op_v) @ c
    warm_diag_conj = c @ c.dag @ (op_z + 1j * op_v)
    return (
        tensor3(cold_diag, fock.e1(), warm_diag),
        tensor3(a.dag @ op_b, fock.e_plus(), warm_diag),
        tensor3(op_b @ a, fock.e1(), c.dag @ op_y),
        tensor3(cold_diag_conj, fock.e_plus(), c.dag @ op_y),
        tensor3(cold_diag, fock.e_minus(), op_y @ c),
        tensor3(a.dag @ op_b, fock.e2(), op_y @ c),
        tensor3(op_b @ a, fock.e_minus(), warm_diag_conj),
        tensor3(cold_diag_conj, fock.e2(), warm_diag_conj),
    )


def _number_shift(number: Operator, monomial: Operator, tol: float) -> int:
    """Solve [N, M] = s M for s in {-1, 0, +1}."""
    scale = float(np.abs(monomial.entries).max())
    if scale < tol:
        raise ValueError("monomial vanishes for these parameters; cannot classify")
    commutator = (number @ monomial - monomial @ number).entries
    for shift in (-1, 0, 1):
        if np.abs(commutator - shift * monomial.entries).max() <= tol * max(scale, 1.0):
            return shift
    raise AssertionError("monomial does not shift the number operator by -1, 0, or +1")


def classify_flows(
    params: CycleParams | None = None, n_max: int = 6, tol: float = 1e-12
) -> tuple[FlowLabel, ...]:
    """Recompute the flow table from commutators with the two oscillator
    number operators and return it, verifying the hardcoded expectation."""
    params = params or CycleParams()
    i_e = identity(ENGINE_DIM)
    i_c = identity(n_max + 1)
    i_w = identity(n_max + 1)
    num_cold = tensor3(fock.number_op(n_max), i_e, i_w)
    num_warm = tensor3(i_c, i_e, fock.number_op(n_max))
    cold_by_shift = {-1: FLOW_TOWARD_ENGINE, 0: FLOW_NONE, 1: FLOW_AWAY_FROM_ENGINE}
    warm_by_shift = {-1: FLOW_TOWARD_ENGINE, 0: FLOW_NONE, 1: FLOW_AWAY_FROM_ENGINE}
    labels = []
    for (term, expected_cold, expected_warm), monomial in zip(
        _TABLE_ROWS, _monomials(params, n_max)
    ):
        label = FlowLabel(
            term,
            cold_by_shift[_number_shift(num_cold, monomial, tol)],
            warm_by_shift[_number_shift(num_warm, monomial, tol)],
        )
        if (label.cold_flow, label.warm_flow) != (expected_cold, expected_warm):
            raise AssertionError(
                f"flow classification of {term!r} disagrees with the expected table"
            )
        labels.append(label)
    return tuple(labels)
