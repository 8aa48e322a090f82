"""Acceptance suite: thirteen criteria, one test and one printed
pass/fail line each.  Tolerances and draw counts are fixed here and must
not be loosened."""
import time

import numpy as np
import pytest

from tlengine import energy, fock, sectors, simulate, smatrix, verify
from tlengine.params import CycleParams

SEED = 12345


def _report(criterion: str, result: verify.CheckResult):
    line = f"acceptance {criterion}: {result}"
    print(line)
    assert result.passed, line


@pytest.fixture(scope="module")
def strong():
    return CycleParams(pulse_mode="strong_limit")


def test_criterion_01_phase1_oracle_equivalence():
    start = time.monotonic()
    result = verify.check_s1_oracle(draws=100, seed=SEED, quanta_bound=8,
                                    tolerance=1e-9)
    elapsed = time.monotonic() - start
    _report("1 (phase-1 oracle, 100 draws, bound 8)", result)
    print(f"acceptance 1 runtime: {elapsed:.1f}s")
    assert elapsed <= 60.0


def test_criterion_02_other_phases_oracle_equivalence():
    result = verify.check_s3_oracle(draws=100, seed=SEED, quanta_bound=8,
                                    tolerance=1e-9)
    _report("2a (phase-3 oracle)", result)
    result = verify.check_s2_oracle_and_closed_form(draws=100, seed=SEED,
                                                tolerance=1e-12)
    _report("2b (finite pulses vs oracle and closed forms)", result)


def test_criterion_03_strong_pulse_limit():
    result = verify.check_s2_strong_limit()
    _report("3 (monotone strong-pulse convergence)", result)


def test_criterion_04_composed_two_path(strong):
    result = verify.check_two_path(strong, quanta_bound=12, tolerance=1e-10)
    _report("4 (composed S two-path, bound 12)", result)


def test_criterion_05_ground_state(strong):
    result = verify.check_ground_state(strong, quanta_bound=8, tolerance=1e-12)
    _report("5 (ground state fixed)", result)


def test_criterion_06_sector_structure(strong):
    result = verify.check_sector_structure(strong, quanta_bound=10,
                                           tolerance=1e-10)
    _report("6 (sector leakage and block unitarity, n <= 10)", result)


def test_criterion_07_transfer_spectrum():
    result = verify.check_transfer_spectrum(draws=25, seed=SEED,
                                            quanta_bound=10, tolerance=1e-10)
    _report("7 (transfer spectrum, 25 draws, n <= 10)", result)


def test_criterion_08_effective_smatrix(strong):
    result = verify.check_s_eff(strong, quanta_bound=10, tolerance=1e-10)
    _report("8 (effective S-matrix chain)", result)


def test_criterion_09_work_operators(strong):
    result = verify.check_work_operators(strong, quanta_bound=10,
                                         tolerance=1e-10)
    _report("9 (work operators and special cases)", result)


def test_criterion_10_identity_suite(strong):
    result = verify.check_diagonal_identities(strong, cutoff=20,
                                              tolerance=1e-12)
    _report("10 (diagonal identities, cutoff 20)", result)


def test_criterion_11_flow_table(strong):
    result = verify.check_flow_table(strong)
    _report("11 (flow table, all eight monomials)", result)


def test_criterion_12_trajectory_conservation(strong):
    start = time.monotonic()
    result = verify.check_trajectory_conservation(strong, quanta_bound=10,
                                                  n_cycles=10_000,
                                                  tolerance=1e-9, seed=SEED)
    elapsed = time.monotonic() - start
    _report("12 (norm and quanta drift over 1e4 cycles, bound 10)", result)
    print(f"acceptance 12 runtime: {elapsed:.1f}s")
    assert elapsed <= 60.0


def test_criterion_13_entanglement_sanity(strong):
    result = verify.check_entropy_bounds(strong, quanta_bound=8)
    _report("13 (zero initial entropy, entropies within [0, ln d])", result)
