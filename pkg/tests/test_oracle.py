import numpy as np
import pytest

from tlengine import fock, oracle
from tlengine.params import CycleParams


@pytest.mark.parametrize("phase", oracle.PHASES)
def test_hamiltonians_hermitian(phase, finite_params):
    h = oracle.assemble_hamiltonian(oracle.phase_spec(phase, finite_params),
                                    finite_params, 5, 5)
    assert np.allclose(h.entries, h.entries.conj().T)


@pytest.mark.parametrize("phase", oracle.PHASES)
def test_smatrices_unitary(phase, finite_params):
    s = oracle.oracle_smatrix(oracle.phase_spec(phase, finite_params),
                              finite_params, 5, 5)
    assert np.allclose(s.entries @ s.entries.conj().T, np.eye(s.dim), atol=1e-12)


def test_zero_coupling_gives_identity():
    params = CycleParams(kappa12=0.0, kappa23=0.0)
    for phase in ("1", "3"):
        s = oracle.oracle_smatrix(oracle.phase_spec(phase, params), params, 4, 4)
        assert np.allclose(s.entries, np.eye(s.dim), atol=1e-12)


def test_interaction_conserves_quanta(finite_params):
    n = 5
    quanta = fock.quanta_operator(n, n)
    for phase in ("1", "3"):
        h = oracle.assemble_hamiltonian(oracle.phase_spec(phase, finite_params),
                                        finite_params, n, n)
        comm = h.entries @ quanta.entries - quanta.entries @ h.entries
        assert np.abs(comm).max() < 1e-12


def test_cycle_fixes_ground_state(finite_params):
    n = 5
    s = oracle.oracle_cycle(finite_params, n, n)
    ground = fock.basis_state((n + 1, 3, n + 1), (0, 0, 0))
    assert np.abs(s.entries @ ground - ground).max() < 1e-10


def test_unitary_exponential_rejects_non_hermitian():
    bad = fock.Operator(np.array([[0.0, 1.0], [0.0, 0.0]]), (2,))
    with pytest.raises(ValueError):
        oracle.unitary_exponential(bad, 1.0)


def test_phase_spec_validation(finite_params):
    with pytest.raises(ValueError):
        oracle.PhaseSpec("5", 1.0)
    with pytest.raises(ValueError):
        oracle.PhaseSpec("1", -1.0)
    spec = oracle.phase_spec("2a", finite_params)
    assert spec.duration == pytest.approx(finite_params.pulse_a_duration)
