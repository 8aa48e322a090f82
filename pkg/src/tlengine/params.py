"""Physical and pulse parameters of one engine cycle."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import pi, sqrt

STRONG_LIMIT = "strong_limit"
FINITE = "finite"


@dataclass(frozen=True)
class CycleParams:
    """All knobs of one cycle (hbar = 1).

    omega1, omega3: oscillator frequencies; mu, delta: engine level
    parameters; kappa12, kappa23: valve couplings; tau1, tau3: contact
    durations; eps_a, eps_b: pulse field strengths.  The pulse durations
    default to the quarter-period choice tau = pi/2 * T with
    T_a = 1/sqrt(delta^2 + eps_a^2) and T_b = 1/sqrt(mu^2 + eps_b^2).
    """

    omega1: float = 2.0
    omega3: float = 1.2
    mu: float = 0.7
    delta: float = 0.5
    kappa12: float = 0.3
    kappa23: float = 0.35
    tau1: float = 1.5
    tau3: float = 1.7
    eps_a: float = 40.0
    eps_b: float = 40.0
    tau_a: float | None = None
    tau_b: float | None = None
    pulse_mode: str = STRONG_LIMIT

    def __post_init__(self):
        if self.pulse_mode not in (STRONG_LIMIT, FINITE):
            raise ValueError(f"unknown pulse_mode {self.pulse_mode!r}")
        for name in ("tau1", "tau3"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def t_a(self) -> float:
        return 1.0 / sqrt(self.delta**2 + self.eps_a**2)

    @property
    def t_b(self) -> float:
        return 1.0 / sqrt(self.mu**2 + self.eps_b**2)

    @property
    def pulse_a_duration(self) -> float:
        return self.tau_a if self.tau_a is not None else 0.5 * pi * self.t_a

    @property
    def pulse_b_duration(self) -> float:
        return self.tau_b if self.tau_b is not None else 0.5 * pi * self.t_b

    def with_(self, **changes) -> "CycleParams":
        return replace(self, **changes)
