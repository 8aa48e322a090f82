import numpy as np
import pytest

from tlengine import energy, fock, simulate, smatrix


def test_ground_state_trajectory_is_constant(params):
    state = simulate.make_initial_state(("product", 0, fock.LEVEL_G, 0), params, 4)
    records = simulate.run(state, params, 4, 10)
    assert len(records) == 11
    first = records[0].as_row()
    for record in records[1:]:
        assert np.allclose(record.as_row()[1:], first[1:], atol=1e-12)
        assert record.return_amplitude == pytest.approx(1.0)


def test_product_state_starts_unentangled(params):
    state = simulate.make_initial_state(("product", 2, fock.LEVEL_E, 1), params, 5)
    record = simulate.observe(state, params, 5)
    assert record.entropy_cold == 0.0
    assert record.entropy_engine == 0.0
    assert record.entropy_warm == 0.0
    assert record.p_e == pytest.approx(1.0)
    assert record.total_quanta == pytest.approx(4.0)


def test_quanta_conserved_over_many_cycles(params):
    state = simulate.make_initial_state(("product", 2, fock.LEVEL_G, 1), params, 6)
    records = simulate.run(state, params, 6, 2000)
    quanta = np.array([r.total_quanta for r in records])
    assert np.abs(quanta - 3.0).max() < 1e-9


def test_superposition_initial_state(params):
    spec = ("superposition", [(1.0, (1, fock.LEVEL_G, 0)), (1.0, (0, fock.LEVEL_E, 0))])
    state = simulate.make_initial_state(spec, params, 4)
    assert np.linalg.norm(state) == pytest.approx(1.0)
    record = simulate.observe(state, params, 4)
    assert record.p_g == pytest.approx(0.5)
    assert record.p_e == pytest.approx(0.5)


def test_transfer_eigenvector_transfers_fixed_quanta(params):
    """Starting in a transfer eigenvector, the first cycle moves exactly
    the closed-form eigenvalue of quanta out of the cold oscillator."""
    bound = 6
    for n in (0, 1, 2):
        for sign in (+1, -1):
            entry = energy.transfer_spectrum(n, params)
            rho = entry.rho_plus if sign > 0 else entry.rho_minus
            state = simulate.make_initial_state(("transfer_eigvec", n, sign, 0),
                                                params, bound)
            s = smatrix.compose_cycle(params, bound, check=False)
            after = simulate.step_cycle(state, s)
            before_rec = simulate.observe(state, params, bound)
            after_rec = simulate.observe(after, params, bound)
            moved = (after_rec.cold_energy - before_rec.cold_energy) / params.omega1
            assert moved == pytest.approx(rho, abs=1e-12)


def test_entropies_bounded(params):
    bound = 5
    state = simulate.make_initial_state(("product", 2, fock.LEVEL_G, 1), params, bound)
    for record in simulate.run(state, params, bound, 100):
        assert 0.0 <= record.entropy_cold <= np.log(bound + 1) + 1e-12
        assert 0.0 <= record.entropy_engine <= np.log(3) + 1e-12
        assert 0.0 <= record.entropy_warm <= np.log(bound + 1) + 1e-12
        assert record.p_g + record.p_e + record.p_f == pytest.approx(1.0)


def test_invalid_initial_specs_rejected(params):
    with pytest.raises(ValueError):
        simulate.make_initial_state(("product", 9, fock.LEVEL_G, 0), params, 4)
    with pytest.raises(ValueError):
        simulate.make_initial_state(("superposition", []), params, 4)
    with pytest.raises(ValueError):
        simulate.make_initial_state(("transfer_eigvec", 4, +1, 0), params, 4)
    with pytest.raises(ValueError):
        simulate.make_initial_state(("bogus",), params, 4)


def test_step_requires_normalized_state(params):
    s = smatrix.compose_cycle(params, 3, check=False)
    with pytest.raises(ValueError):
        simulate.step_cycle(np.ones(s.dim, dtype=complex), s)


def test_run_rejects_negative_cycle_count(params):
    state = simulate.make_initial_state(("product", 0, 0, 0), params, 3)
    with pytest.raises(ValueError):
        simulate.run(state, params, 3, -1)
