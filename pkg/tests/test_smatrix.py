import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlengine import fock, oracle, smatrix
from tlengine.fock import identity
from tlengine.params import CycleParams

positive = st.floats(0.01, 3.0, allow_nan=False)
frequency = st.floats(0.1, 5.0, allow_nan=False)


@given(frequency, frequency, positive, st.integers(0, 20))
@settings(max_examples=50, deadline=None)
def test_dressed_coefficients_well_formed(omega1, mu, kappa12, n):
    params = CycleParams(omega1=omega1, mu=mu, kappa12=kappa12)
    coeff = smatrix.dressed_coefficients("cold", n, params)
    detuning = omega1 - 2 * mu
    expected = 0.5 * np.sqrt(4 * kappa12**2 * (n + 1) + detuning**2)
    assert coeff.splitting == pytest.approx(expected, rel=1e-12)
    assert -np.pi / 2 <= coeff.angle <= np.pi / 2
    # The mixing angle satisfies its defining tangent relation.
    lhs = np.tan(coeff.angle) * (2 * coeff.splitting + detuning)
    assert lhs == pytest.approx(2 * kappa12 * np.sqrt(n + 1), abs=1e-9)


def test_resonant_mixing_angle_is_maximal():
    params = CycleParams(omega1=1.4, mu=0.7)  # omega1 = 2 mu
    coeff = smatrix.dressed_coefficients("cold", 3, params)
    assert coeff.angle == pytest.approx(np.pi / 4)


def test_s1_matches_oracle(params):
    n = 6
    brute = oracle.oracle_smatrix(oracle.phase_spec("1", params), params, n, n)
    analytic = smatrix.s1(params, n).tensor(identity(n + 1))
    mask = np.repeat(smatrix.pair_mask(n, n, "cold"), n + 1)
    assert smatrix.masked_norm(brute.entries - analytic.entries, mask) < 1e-10


def test_s3_matches_oracle(params):
    n = 6
    brute = oracle.oracle_smatrix(oracle.phase_spec("3", params), params, n, n)
    analytic = identity(n + 1).tensor(smatrix.s3(params, n))
    mask = np.tile(smatrix.pair_mask(n, n, "warm"), n + 1)
    assert smatrix.masked_norm(brute.entries - analytic.entries, mask) < 1e-10


def test_finite_pulses_match_oracle(finite_params):
    for phase, closed in (("2a", smatrix.s2a(finite_params)),
                           ("2b", smatrix.s2b(finite_params))):
        brute = oracle.oracle_smatrix(oracle.phase_spec(phase, finite_params),
                                      finite_params, 0, 0)
        assert np.abs(brute.entries - closed.entries).max() < 1e-12


def test_strong_limit_matrices():
    params = CycleParams(pulse_mode="strong_limit")
    expected_s2 = np.array([[0, 0, 1], [1j, 0, 0], [0, -1j, 0]])
    assert np.array_equal(smatrix.s2(params).entries, expected_s2)
    product = smatrix.s2b(params) @ smatrix.s2a(params)
    assert np.array_equal(product.entries, expected_s2)


def test_strong_limit_convergence_monotone():
    strong = smatrix.s2(CycleParams(pulse_mode="strong_limit")).entries
    errors = []
    for eps in (10.0, 100.0, 1000.0, 10000.0):
        finite = smatrix.s2(CycleParams(pulse_mode="finite", eps_a=eps, eps_b=eps))
        errors.append(np.abs(finite.entries - strong).max())
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 1e-3


def test_s4_is_adjoint_of_s2(finite_params):
    assert np.allclose(smatrix.s4(finite_params).entries,
                       smatrix.s2(finite_params).entries.conj().T)


def test_composed_two_path(params):
    product = smatrix.compose_cycle_product(params, 8)
    closed = smatrix.compose_cycle_closed_form(params, 8)
    mask = smatrix.quanta_mask(8, 8, 8)
    assert smatrix.masked_norm(product.entries - closed.entries, mask) < 1e-10


def test_closed_form_requires_strong_limit(finite_params):
    with pytest.raises(ValueError):
        smatrix.compose_cycle_closed_form(finite_params, 4)


def test_corrupted_transcription_is_caught(params, monkeypatch):
    """Negative control: a wrong closed form must trip the two-path check."""
    genuine = smatrix.compose_cycle_closed_form

    def corrupted(p, bound):
        op = genuine(p, bound)
        entries = op.entries.copy()
        entries[0, 1] += 1e-3
        return fock.Operator(entries, op.signature)

    monkeypatch.setattr(smatrix, "compose_cycle_closed_form", corrupted)
    with pytest.raises(AssertionError, match="two-path"):
        smatrix.compose_cycle(params, 6, check=True)


def test_composed_unitary_on_bounded_subspace(params):
    s = smatrix.compose_cycle(params, 6, check=True)
    mask = smatrix.quanta_mask(6, 6, 6)
    sub = s.entries[np.ix_(mask, mask)]
    assert np.abs(sub @ sub.conj().T - np.eye(mask.sum())).max() < 1e-12


def test_ground_state_fixed(params):
    s = smatrix.compose_cycle(params, 5, check=False)
    ground = fock.basis_state((6, 3, 6), (0, 0, 0))
    assert np.array_equal(s.entries @ ground, ground)


def test_s_eff_reproduces_transfer(params):
    """S_eff on cold (x) {g, e} reproduces S^dag a^dag a S - a^dag a."""
    n = 6
    s_eff = smatrix.s_eff(params, n)
    number = fock.number_op(n).tensor(identity(2))
    lhs = (s_eff.dag @ number @ s_eff - number).entries
    from tlengine import energy
    d_ce = energy.transfer_operator_cold_engine(params, n).entries
    keep = [m * 3 + level for m in range(n + 1) for level in (0, 1)]
    quanta = np.array([m + level for m in range(n + 1) for level in (0, 1)])
    inside = quanta <= n
    diff = (lhs - d_ce[np.ix_(keep, keep)])[np.ix_(inside, inside)]
    assert np.abs(diff).max() < 1e-12
