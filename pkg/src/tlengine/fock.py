"""Elementary operators: truncated bosonic ladders, Gell-Mann matrices,
three-level engine projectors, and signature-checked tensor products.

Basis conventions, fixed repo-wide:
  * engine levels are ordered g=0, e=1, f=2;
  * the full space is cold (x) engine (x) warm, cold-major, so the flat
    index of |m, level, k> is (m*3 + level)*(warm cutoff + 1) + k.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

LEVEL_G, LEVEL_E, LEVEL_F = 0, 1, 2
ENGINE_DIM = 3


@dataclass(frozen=True)
class Operator:
    """Dense complex matrix with the ordered factor dimensions it acts on."""

    entries: np.ndarray
    signature: tuple[int, ...]

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "signature", tuple(int(d) for d in self.signature))
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"operator entries must be square, got {entries.shape}")
        if entries.shape[0] != prod(self.signature):
            raise ValueError(
                f"dimension {entries.shape[0]} does not match signature {self.signature}"
            )

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def dag(self) -> "Operator":
        return Operator(self.entries.conj().T, self.signature)

    def _require_same_signature(self, other: "Operator"):
        if self.signature != other.signature:
            raise ValueError(f"signature mismatch: {self.signature} vs {other.signature}")

    def __matmul__(self, other: "Operator") -> "Operator":
        self._require_same_signature(other)
        return Operator(self.entries @ other.entries, self.signature)

    def __add__(self, other: "Operator") -> "Operator":
        self._require_same_signature(other)
        return Operator(self.entries + other.entries, self.signature)

    def __sub__(self, other: "Operator") -> "Operator":
        self._require_same_signature(other)
        return Operator(self.entries - other.entries, self.signature)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.entries * scalar, self.signature)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(-self.entries, self.signature)

    def tensor(self, other: "Operator") -> "Operator":
        return Operator(np.kron(self.entries, other.entries),
                        self.signature + other.signature)


def identity(*signature: int) -> Operator:
    return Operator(np.eye(prod(signature)), signature)


def annihilator(n_max: int) -> Operator:
    """Truncated bosonic lowering operator, <n-1| a |n> = sqrt(n)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    dim = n_max + 1
    return Operator(np.diag(np.sqrt(np.arange(1, dim)), k=1), (dim,))


def creator(n_max: int) -> Operator:
    return annihilator(n_max).dag


def number_op(n_max: int) -> Operator:
    return Operator(np.diag(np.arange(n_max + 1, dtype=float)), (n_max + 1,))


def ground_projector(n_max: int) -> Operator:
    """Projector |0><0| on a truncated oscillator."""
    mat = np.zeros((n_max + 1, n_max + 1))
    mat[0, 0] = 1.0
    return Operator(mat, (n_max + 1,))


def fock_diagonal(values: np.ndarray) -> Operator:
    """Diagonal operator sum_n values[n] |n><n|."""
    values = np.asarray(values)
    return Operator(np.diag(values.astype(complex)), (len(values),))


_GELL_MANN = {
    1: [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    2: [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
    3: [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
    4: [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
    5: [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
    6: [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    7: [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
}


def gell_mann(index: int) -> Operator:
    if index == 8:
        mat = np.diag([1, 1, -2]) / np.sqrt(3)
    elif index in _GELL_MANN:
        mat = np.array(_GELL_MANN[index], dtype=complex)
    else:
        raise ValueError(f"Gell-Mann index must be in 1..8, got {index}")
    return Operator(mat, (ENGINE_DIM,))


def e_plus() -> Operator:
    return 0.5 * (gell_mann(1) + 1j * gell_mann(2))


def e_minus() -> Operator:
    return 0.5 * (gell_mann(1) - 1j * gell_mann(2))


def f_plus() -> Operator:
    return 0.5 * (gell_mann(6) + 1j * gell_mann(7))


def f_minus() -> Operator:
    return 0.5 * (gell_mann(6) - 1j * gell_mann(7))


def e1() -> Operator:
    return e_plus() @ e_minus()


def e2() -> Operator:
    return e_minus() @ e_plus()


def e3() -> Operator:
    return Operator(np.diag([0.0, 0.0, 1.0]), (ENGINE_DIM,))


def h_gef(mu: float, delta: float) -> Operator:
    """Engine Hamiltonian diag(-mu, mu, mu + 2*delta)."""
    return Operator(np.diag([-mu, mu, mu + 2 * delta]), (ENGINE_DIM,))


def engine_number() -> Operator:
    """Quanta carried by the engine levels: diag(0, 1, 2)."""
    return Operator(np.diag([0.0, 1.0, 2.0]), (ENGINE_DIM,))


def tensor3(cold: Operator, engine: Operator, warm: Operator) -> Operator:
    if engine.signature != (ENGINE_DIM,):
        raise ValueError(f"engine factor must have signature (3,), got {engine.signature}")
    if len(cold.signature) != 1 or len(warm.signature) != 1:
        raise ValueError("cold and warm factors must be single oscillators")
    return cold.tensor(engine).tensor(warm)


def quanta_operator(n_cold_max: int, n_warm_max: int) -> Operator:
    """Total quanta N = a^dag a + diag(0,1,2) + c^dag c on the full space."""
    return (
        tensor3(number_op(n_cold_max), identity(ENGINE_DIM), identity(n_warm_max + 1))
        + tensor3(identity(n_cold_max + 1), engine_number(), identity(n_warm_max + 1))
        + tensor3(identity(n_cold_max + 1), identity(ENGINE_DIM), number_op(n_warm_max))
    )


def basis_state(dims: tuple[int, ...], occupations: tuple[int, ...]) -> np.ndarray:
    """Product basis vector for the given factor occupations."""
    if len(dims) != len(occupations):
        raise ValueError("dims and occupations must have equal length")
    index = 0
    for d, n in zip(dims, occupations):
        if not 0 <= n < d:
            raise ValueError(f"occupation {n} out of range for dimension {d}")
        index = index * d + n
    vec = np.zeros(prod(dims), dtype=complex)
    vec[index] = 1.0
    return vec
