"""Desk-scale model of a three-level engine shuttling quanta between two
oscillators: closed-form cycle S-matrices, a brute-force oracle they are
checked against, invariant-sector tools, energy accounting, and a
multi-cycle simulator."""

from .params import FINITE, STRONG_LIMIT, CycleParams
from .fock import ENGINE_DIM, LEVEL_E, LEVEL_F, LEVEL_G, Operator
from .oracle import oracle_cycle, oracle_smatrix, phase_spec
from .smatrix import (
    compose_cycle,
    dressed_coefficients,
    s1,
    s2,
    s2a,
    s2b,
    s3,
    s4,
    s_eff,
)
from .sectors import SectorBasis, quasi_periodicity, sector_basis, sector_spectrum
from .energy import (
    classify_flows,
    expected_flow_table,
    pulse_work_spectrum,
    transfer_operator,
    transfer_spectrum,
    work_operators,
)
from .simulate import CycleRecord, make_initial_state, observe, run, step_cycle
from .verify import CheckResult, run_all

__version__ = "1.0.0"

__all__ = [
    "CheckResult",
    "CycleParams",
    "CycleRecord",
    "ENGINE_DIM",
    "FINITE",
    "LEVEL_E",
    "LEVEL_F",
    "LEVEL_G",
    "Operator",
    "STRONG_LIMIT",
    "SectorBasis",
    "classify_flows",
    "compose_cycle",
    "dressed_coefficients",
    "expected_flow_table",
    "make_initial_state",
    "observe",
    "oracle_cycle",
    "oracle_smatrix",
    "phase_spec",
    "pulse_work_spectrum",
    "quasi_periodicity",
    "run",
    "run_all",
    "s1",
    "s2",
    "s2a",
    "s2b",
    "s3",
    "s4",
    "s_eff",
    "sector_basis",
    "sector_spectrum",
    "step_cycle",
    "transfer_operator",
    "transfer_spectrum",
    "work_operators",
]
