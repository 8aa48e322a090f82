"""Verification suites: every analytic construction against the
brute-force oracle, plus the identity, spectrum, flow, and conservation
checks.  The command-line `verify` subcommand and the acceptance tests
both run these."""
from __future__ import annotations

from dataclasses import dataclass
from math import log, sin

import numpy as np

from . import energy, fock, oracle, sectors, simulate, smatrix
from .fock import ENGINE_DIM, Operator, identity, tensor3
from .params import FINITE, CycleParams

DEFAULT_TOL_OPERATOR = 1e-10
DEFAULT_TOL_TRAJECTORY = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: deviation {self.deviation:.3e} (tol {self.tolerance:.1e})"


def _random_params(rng: np.random.Generator, pulse_mode: str = FINITE) -> CycleParams:
    # Log-uniform couplings, uniform frequencies/durations.
    def log_uniform(lo, hi):
        return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))

    return CycleParams(
        omega1=float(rng.uniform(0.1, 5.0)),
        omega3=float(rng.uniform(0.1, 5.0)),
        mu=float(rng.uniform(0.1, 2.0)),
        delta=float(rng.uniform(0.1, 2.0)),
        kappa12=log_uniform(0.01, 3.0),
        kappa23=log_uniform(0.01, 3.0),
        tau1=float(rng.uniform(0.0, 10.0)),
        tau3=float(rng.uniform(0.0, 10.0)),
        eps_a=log_uniform(1.0, 50.0),
        eps_b=log_uniform(1.0, 50.0),
        pulse_mode=pulse_mode,
    )


def check_s1_oracle(draws: int, seed: int, quanta_bound: int = 8,
                    tolerance: float = 1e-9) -> CheckResult:
    """Analytic phase-1 S-matrix against exp(i tau H0) exp(-i tau H)."""
    rng = np.random.default_rng(seed)
    n = quanta_bound
    mask = np.repeat(smatrix.pair_mask(n, n, "cold"), n + 1)
    worst = 0.0
    i_w = identity(n + 1)
    for _ in range(draws):
        params = _random_params(rng)
        brute = oracle.oracle_smatrix(oracle.phase_spec("1", params), params, n, n)
        analytic = smatrix.s1(params, n).tensor(i_w)
        worst = max(worst, smatrix.masked_norm(brute.entries - analytic.entries, mask))
    return CheckResult("s1 oracle equivalence", worst, tolerance)


def check_s3_oracle(draws: int, seed: int, quanta_bound: int = 8,
                    tolerance: float = 1e-9) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    n = quanta_bound
    mask = np.tile(smatrix.pair_mask(n, n, "warm"), n + 1)
    worst = 0.0
    for _ in range(draws):
        params = _random_params(rng)
        brute = oracle.oracle_smatrix(oracle.phase_spec("3", params), params, n, n)
        analytic = identity(n + 1).tensor(smatrix.s3(params, n))
        worst = max(worst, smatrix.masked_norm(brute.entries - analytic.entries, mask))
    return CheckResult("s3 oracle equivalence", worst, tolerance)


def check_s2_oracle_and_closed_form(draws: int, seed: int,
                                tolerance: float = 1e-12) -> CheckResult:
    """Finite-pulse S2a/S2b against the oracle and the closed-form matrices."""
    rng = np.random.default_rng(seed + 2)
    worst = 0.0
    for _ in range(draws):
        params = _random_params(rng)
        for phase, closed in (("2a", smatrix.s2a(params)), ("2b", smatrix.s2b(params))):
            brute = oracle.oracle_smatrix(oracle.phase_spec(phase, params), params, 0, 0)
            worst = max(worst, float(np.abs(brute.entries - closed.entries).max()))
        product = smatrix.s2b(params) @ smatrix.s2a(params)
        worst = max(worst, float(np.abs(product.entries - smatrix.s2(params).entries).max()))
    return CheckResult("s2a/s2b oracle and closed-form matrices", worst, tolerance)


def check_s2_strong_limit(tolerance: float = 0.0) -> CheckResult:
    """Entrywise error of finite S2 against the strong-pulse limit must
    decrease monotonically over a decade sweep of the field strength."""
    strengths = [10.0**k for k in range(1, 6)]
    errors = []
    for eps in strengths:
        params = CycleParams(pulse_mode=FINITE, eps_a=eps, eps_b=eps)
        strong = CycleParams(pulse_mode="strong_limit")
        errors.append(float(np.abs(smatrix.s2(params).entries
                                   - smatrix.s2(strong).entries).max()))
    worst_increase = max(b - a for a, b in zip(errors, errors[1:]))
    return CheckResult("s2 strong-limit monotone convergence",
                       max(0.0, worst_increase), tolerance)


def check_two_path(params: CycleParams, quanta_bound: int = 12,
                   tolerance: float = 1e-10) -> CheckResult:
    product = smatrix.compose_cycle_product(params, quanta_bound)
    closed = smatrix.compose_cycle_closed_form(params, quanta_bound)
    mask = smatrix.quanta_mask(quanta_bound, quanta_bound, quanta_bound)
    deviation = smatrix.masked_norm(product.entries - closed.entries, mask)
    return CheckResult("composed S two-path agreement", deviation, tolerance)


def check_ground_state(params: CycleParams, quanta_bound: int = 8,
                       tolerance: float = 1e-12) -> CheckResult:
    s = smatrix.compose_cycle(params, quanta_bound, check=False)
    dims = (quanta_bound + 1, ENGINE_DIM, quanta_bound + 1)
    ground = fock.basis_state(dims, (0, 0, 0))
    deviation = float(np.abs(s.entries @ ground - ground).max())
    return CheckResult("ground state fixed by S", deviation, tolerance)


def check_sector_structure(params: CycleParams, quanta_bound: int = 10,
                           tolerance: float = 1e-10) -> CheckResult:
    """Leakage out of every H_n and unitarity of every sector block."""
    n = quanta_bound
    s = smatrix.compose_cycle(params, n, check=False)
    worst = 0.0
    for sector_n in range(n + 1):
        basis = sectors.sector_basis(sector_n)
        worst = max(worst, sectors.leakage(s, basis, n, n))
        block = sectors.project(s, basis, n, n)
        unitarity = float(np.abs(block.conj().T @ block - np.eye(basis.dim)).max())
        moduli = float(np.abs(np.abs(np.linalg.eigvals(block)) - 1.0).max())
        worst = max(worst, unitarity, moduli)
    return CheckResult("sector invariance and block unitarity", worst, tolerance)


def check_transfer_spectrum(draws: int, seed: int, quanta_bound: int = 10,
                            tolerance: float = 1e-10) -> CheckResult:
    """Numerical eigenvalues of D against the closed form, the sign
    symmetry of its spectrum, and D |0, g> = 0."""
    rng = np.random.default_rng(seed + 3)
    n_max = quanta_bound
    worst = 0.0
    for _ in range(draws):
        params = _random_params(rng, pulse_mode="strong_limit")
        d_ce = energy.transfer_operator_cold_engine(params, n_max)
        for n in range(n_max):
            entry = energy.transfer_spectrum(n, params)
            idx = [(n + 1) * ENGINE_DIM + fock.LEVEL_G, n * ENGINE_DIM + fock.LEVEL_E]
            block = d_ce.entries[np.ix_(idx, idx)]
            eigenvalues = np.sort(np.linalg.eigvalsh(block))
            expected = np.sort([entry.rho_plus, entry.rho_minus])
            worst = max(worst, float(np.abs(eigenvalues - expected).max()))
            worst = max(worst, abs(entry.rho_plus + entry.rho_minus))
            for sign in (+1, -1):
                vec = entry.eigenvector(sign, normalized=True)
                rho = entry.rho_plus if sign > 0 else entry.rho_minus
                worst = max(worst, float(np.linalg.norm(block @ vec - rho * vec)))
        ground = np.zeros(d_ce.dim)
        ground[0] = 1.0  # |0, g>
        worst = max(worst, float(np.abs(d_ce.entries @ ground).max()))
    return CheckResult("transfer-operator spectrum", worst, tolerance)


def check_transfer_two_path(params: CycleParams, quanta_bound: int = 10,
                            tolerance: float = 1e-10) -> CheckResult:
    n = quanta_bound
    closed = energy.transfer_operator(params, n, check=False)
    s = smatrix.compose_cycle(params, n, check=False)
    num_cold = tensor3(fock.number_op(n), identity(ENGINE_DIM), identity(n + 1))
    conjugated = s.dag @ num_cold @ s - num_cold
    mask = smatrix.quanta_mask(n, n, n)
    deviation = smatrix.masked_norm(conjugated.entries - closed.entries, mask)
    return CheckResult("transfer operator two-path agreement", deviation, tolerance)


def check_s_eff(params: CycleParams, quanta_bound: int = 10,
                tolerance: float = 1e-10) -> CheckResult:
    """S_eff^dag a^dag a S_eff = D + a^dag a = S^dag a^dag a S."""
    n = quanta_bound
    s_eff = smatrix.s_eff(params, n)
    number_ge = fock.number_op(n).tensor(identity(2))
    lhs = (s_eff.dag @ number_ge @ s_eff - number_ge).entries

    d_ce = energy.transfer_operator_cold_engine(params, n).entries
    embed = np.zeros(((n + 1) * 2, (n + 1) * ENGINE_DIM))
    for m in range(n + 1):
        for level in range(2):
            embed[m * 2 + level, m * ENGINE_DIM + level] = 1.0
    d_ge = embed @ d_ce @ embed.T
    quanta_ge = np.add.outer(np.arange(n + 1), np.arange(2)).ravel()
    mask_ge = quanta_ge <= n
    deviation = float(np.abs((lhs - d_ge)[np.ix_(mask_ge, mask_ge)]).max())

    s = smatrix.compose_cycle(params, n, check=False)
    num_cold = tensor3(fock.number_op(n), identity(ENGINE_DIM), identity(n + 1))
    conjugated = (s.dag @ num_cold @ s - num_cold).entries
    d_full = np.kron(d_ce, np.eye(n + 1))
    mask = smatrix.quanta_mask(n, n, n)
    deviation = max(deviation, smatrix.masked_norm(conjugated - d_full, mask))
    return CheckResult("effective S-matrix chain of equalities", deviation, tolerance)


def check_work_operators(params: CycleParams, quanta_bound: int = 10,
                         tolerance: float = 1e-10) -> CheckResult:
    """Closed forms vs definitions, plus the closed-form special cases."""
    n = quanta_bound
    worst = 0.0
    try:
        ops = energy.work_operators(params, n, check=True, tol=tolerance)
    except AssertionError:
        return CheckResult("work operators", float("inf"), tolerance)

    expected_de2 = 2 * np.diag([params.mu, params.delta, -params.mu - params.delta])
    worst = max(worst, float(np.abs(ops.phase2.entries - expected_de2).max()))

    resonant1 = params.with_(omega1=2 * params.mu)
    worst = max(worst, float(np.abs(energy.work_phase1(resonant1, n).entries).max()))
    resonant3 = params.with_(omega3=2 * params.delta)
    worst = max(worst, float(np.abs(energy.work_phase3(resonant3, n).entries).max()))

    balanced = params.with_(delta=params.mu)
    ops_balanced = energy.work_operators(balanced, n, check=False)
    cancel = ops_balanced.phase4 + ops_balanced.phase2.tensor(identity(n + 1))
    worst = max(worst, float(np.abs(cancel.entries).max()))

    # Pulse-work spectrum on the doublet blocks.
    total = ops.phase2.tensor(identity(n + 1)) + ops.phase4
    scale = 2 * (params.mu - params.delta)
    for m in range(n):
        plus, minus = energy.pulse_work_spectrum(m, params)
        idx = [fock.LEVEL_G * (n + 1) + m + 1, fock.LEVEL_E * (n + 1) + m]
        block = total.entries[np.ix_(idx, idx)]
        eigenvalues = np.sort(np.linalg.eigvalsh(block) / scale)
        worst = max(worst, float(np.abs(eigenvalues - np.sort([plus, minus])).max()))
    return CheckResult("work operators", worst, tolerance)


def check_diagonal_identities(params: CycleParams, cutoff: int = 20,
                              tolerance: float = 1e-12) -> CheckResult:
    """The unitarity identities of the diagonal operators, checked below
    the truncation edge."""
    n = cutoff
    a = fock.annihilator(n)
    c = fock.annihilator(n)
    op_a, op_b, op_c = smatrix.abc_operators(params, n)
    op_z, op_y, op_v = smatrix.zyv_operators(params, n)
    g1 = fock.ground_projector(n)
    g3 = fock.ground_projector(n)
    eye = np.eye(n + 1)
    interior = np.s_[:n, :n]

    id1 = (a @ a.dag @ op_b @ op_b
           + a @ a.dag @ a @ a.dag @ (op_a @ op_a + op_c @ op_c)).entries
    worst = float(np.abs((id1 - eye)[interior]).max())

    id2 = (g1 + a.dag @ op_b @ op_b @ a
           + a.dag @ a @ a.dag @ (op_a @ op_a + op_c @ op_c) @ a).entries
    worst = max(worst, float(np.abs(id2 - eye).max()))

    x = (c @ c.dag @ (op_z @ op_z + op_v @ op_v) + op_y @ op_y).entries
    harmonic = np.diag(1.0 / np.arange(1, n + 2))
    worst = max(worst, float(np.abs((x - harmonic)[interior]).max()))
    worst = max(worst, float(np.abs(((c @ c.dag).entries @ x - eye)[interior]).max()))
    id3 = g3.entries + (c.dag.entries @ x @ c.entries)
    worst = max(worst, float(np.abs((id3 - eye)[interior]).max()))
    return CheckResult("diagonal operator identities", worst, tolerance)


def check_flow_table(params: CycleParams, tolerance: float = 0.0) -> CheckResult:
    try:
        energy.classify_flows(params)
        deviation = 0.0
    except AssertionError:
        deviation = 1.0
    return CheckResult("flow table reproduction", deviation, tolerance)


def check_trajectory_conservation(params: CycleParams, quanta_bound: int = 10,
                                  n_cycles: int = 10_000,
                                  tolerance: float = DEFAULT_TOL_TRAJECTORY,
                                  seed: int = 0) -> CheckResult:
    """Norm and total-quanta drift over a long run."""
    rng = np.random.default_rng(seed + 4)
    n = quanta_bound
    s = smatrix.compose_cycle(params, n, check=False)
    mask = smatrix.quanta_mask(n, n, n)
    state = np.zeros(s.dim, dtype=complex)
    state[mask] = rng.normal(size=mask.sum()) + 1j * rng.normal(size=mask.sum())
    state /= np.linalg.norm(state)
    records = simulate.run(state, params, n, n_cycles, s=s)
    quanta = np.array([r.total_quanta for r in records])
    worst = float(np.abs(quanta - quanta[0]).max())
    # Norm drift via the exact eigenphase powers.
    import scipy.linalg
    t, q = scipy.linalg.schur(s.entries, output="complex")
    coeff = q.conj().T @ state
    final = q @ (np.exp(1j * n_cycles * np.angle(np.diagonal(t))) * coeff)
    worst = max(worst, abs(np.linalg.norm(final) - 1.0))
    return CheckResult("trajectory norm and quanta conservation", worst, tolerance)


def check_entropy_bounds(params: CycleParams, quanta_bound: int = 8,
                         n_cycles: int = 50, tolerance: float = 1e-9) -> CheckResult:
    """Product states start at zero entropy; every entropy stays within
    [0, ln(subsystem dimension)]."""
    n = quanta_bound
    m = min(3, n)
    k = min(2, n - m)
    state = simulate.make_initial_state(("product", m, fock.LEVEL_G, k), params, n)
    records = simulate.run(state, params, n, n_cycles)
    first = records[0]
    worst = max(abs(first.entropy_cold), abs(first.entropy_engine),
                abs(first.entropy_warm))
    bound_osc, bound_engine = log(n + 1), log(ENGINE_DIM)
    for record in records:
        worst = max(
            worst,
            -min(record.entropy_cold, record.entropy_engine, record.entropy_warm, 0.0),
            record.entropy_cold - bound_osc,
            record.entropy_engine - bound_engine,
            record.entropy_warm - bound_osc,
        )
        worst = max(worst, abs(record.p_g + record.p_e + record.p_f - 1.0))
    return CheckResult("entropy bounds and population normalization", max(worst, 0.0),
                       tolerance)


def run_all(
    params: CycleParams | None = None,
    draws: int = 100,
    spectrum_draws: int = 25,
    seed: int = 12345,
    quanta_bound: int | None = None,
    tol_operator: float = DEFAULT_TOL_OPERATOR,
    tol_trajectory: float = DEFAULT_TOL_TRAJECTORY,
    n_cycles: int = 10_000,
) -> list[CheckResult]:
    """Run the full verification suite and return one result per check.

    With the default `quanta_bound=None`, each check uses its own default
    cutoff (8 for the oracle sweeps, 12 for the composed two-path check,
    10 for the sector/spectrum/work checks, 20 for the identity cutoff).
    An explicit bound is used everywhere, so `quanta_bound=1` exercises the
    whole suite on the smallest nontrivial sector.
    """
    params = params or CycleParams()
    strong = params.with_(pulse_mode="strong_limit")
    if quanta_bound is None:
        oracle_bound, compose_bound, sector_bound, cutoff = 8, 12, 10, 20
    else:
        if quanta_bound < 1:
            raise ValueError("quanta_bound must be >= 1")
        oracle_bound = compose_bound = sector_bound = cutoff = quanta_bound
    return [
        check_s1_oracle(draws, seed, oracle_bound, tolerance=1e-9),
        check_s3_oracle(draws, seed, oracle_bound, tolerance=1e-9),
        check_s2_oracle_and_closed_form(draws, seed, tolerance=1e-12),
        check_s2_strong_limit(),
        check_two_path(strong, compose_bound, tolerance=tol_operator),
        check_ground_state(strong, oracle_bound, tolerance=1e-12),
        check_sector_structure(strong, sector_bound, tolerance=tol_operator),
        check_transfer_spectrum(spectrum_draws, seed, sector_bound, tolerance=tol_operator),
        check_transfer_two_path(strong, sector_bound, tolerance=tol_operator),
        check_s_eff(strong, sector_bound, tolerance=tol_operator),
        check_work_operators(strong, sector_bound, tolerance=tol_operator),
        check_diagonal_identities(strong, cutoff, tolerance=1e-12),
        check_flow_table(strong),
        check_trajectory_conservation(strong, sector_bound, n_cycles, tol_trajectory, seed),
        check_entropy_bounds(strong, oracle_bound),
    ]
