"""Dense quantum state containers.

A :class:`QuantumState` is either a pure statevector or a density operator,
always over an explicit number of qubits.  Qubit 0 is the most significant
bit of a computational basis index, so ``basis_state(2, "10")`` has its
amplitude at index 2.

States are immutable: the backing arrays are marked read-only and every
operation in :mod:`qcryptlab.simulator.engine` returns a fresh state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

PURE_QUBIT_LIMIT = 20
MIXED_QUBIT_LIMIT = 12

_ATOL = 1e-10


class SimulatorError(Exception):
    """Base class for simulator failures."""


class QubitLimitError(SimulatorError):
    """Raised when a state or circuit would exceed the dense-simulation ceiling."""


class StateValidationError(SimulatorError):
    """Raised when array data does not describe a normalized quantum state."""


def _check_qubit_count(num_qubits: int, pure: bool) -> None:
    limit = PURE_QUBIT_LIMIT if pure else MIXED_QUBIT_LIMIT
    if num_qubits < 1:
        raise StateValidationError(f"need at least one qubit, got {num_qubits}")
    if num_qubits > limit:
        kind = "pure" if pure else "mixed"
        raise QubitLimitError(
            f"{num_qubits} qubits exceeds the {kind}-mode ceiling of {limit}"
        )


@dataclass(frozen=True)
class QuantumState:
    """A pure statevector or density operator on ``num_qubits`` qubits.

    Use :meth:`from_vector`, :meth:`from_density`, or the module helpers
    ``basis_state`` / ``zero_state`` instead of the raw constructor.
    """

    num_qubits: int
    data: np.ndarray = field(repr=False)
    pure: bool

    @staticmethod
    def from_vector(vec: Union[Sequence[complex], np.ndarray]) -> "QuantumState":
        arr = np.asarray(vec, dtype=np.complex128).reshape(-1)
        dim = arr.shape[0]
        n = dim.bit_length() - 1
        if 2**n != dim:
            raise StateValidationError(f"vector length {dim} is not a power of two")
        _check_qubit_count(n, pure=True)
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > 1e-8:
            raise StateValidationError(f"statevector norm {norm!r} is not 1")
        arr = arr / norm
        arr.setflags(write=False)
        return QuantumState(num_qubits=n, data=arr, pure=True)

    @staticmethod
    def from_density(mat: Union[Sequence[Sequence[complex]], np.ndarray]) -> "QuantumState":
        arr = np.asarray(mat, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise StateValidationError(f"density operator must be square, got {arr.shape}")
        dim = arr.shape[0]
        n = dim.bit_length() - 1
        if 2**n != dim:
            raise StateValidationError(f"density dimension {dim} is not a power of two")
        _check_qubit_count(n, pure=False)
        if not np.allclose(arr, arr.conj().T, atol=1e-8):
            raise StateValidationError("density operator is not Hermitian")
        tr = np.trace(arr).real
        if abs(tr - 1.0) > 1e-8:
            raise StateValidationError(f"density trace {tr!r} is not 1")
        eigs = np.linalg.eigvalsh(arr)
        if eigs.min() < -1e-8:
            raise StateValidationError(f"density operator has negative eigenvalue {eigs.min()!r}")
        arr = arr / tr
        arr.setflags(write=False)
        return QuantumState(num_qubits=n, data=arr, pure=False)

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    def vector(self) -> np.ndarray:
        """Writable copy of the statevector.  Pure states only."""
        if not self.pure:
            raise SimulatorError("state is mixed; no statevector available")
        return np.array(self.data, dtype=np.complex128)

    def density(self) -> np.ndarray:
        """Writable copy of the density operator (formed from the vector if pure)."""
        if self.pure:
            return np.outer(self.data, self.data.conj())
        return np.array(self.data, dtype=np.complex128)

    def to_mixed(self) -> "QuantumState":
        """The same state as an explicit density operator."""
        if not self.pure:
            return self
        _check_qubit_count(self.num_qubits, pure=False)
        rho = self.density()
        rho.setflags(write=False)
        return QuantumState(num_qubits=self.num_qubits, data=rho, pure=False)

    def probabilities(self) -> np.ndarray:
        """Computational-basis outcome distribution."""
        if self.pure:
            p = np.abs(self.data) ** 2
        else:
            p = np.real(np.diag(self.data)).copy()
        p = np.clip(p, 0.0, None)
        return p / p.sum()

    def tensor(self, other: "QuantumState") -> "QuantumState":
        """Product state ``self (x) other``, with other's qubits appended."""
        if self.pure and other.pure:
            return QuantumState.from_vector(np.kron(self.data, other.data))
        return QuantumState.from_density(np.kron(self.density(), other.density()))


BitsLike = Union[str, int, Iterable[int]]


def _basis_index(num_qubits: int, value: BitsLike) -> int:
    if isinstance(value, str):
        if len(value) != num_qubits or set(value) - {"0", "1"}:
            raise StateValidationError(f"bad basis label {value!r} for {num_qubits} qubits")
        return int(value, 2)
    if isinstance(value, int):
        if not 0 <= value < 2**num_qubits:
            raise StateValidationError(f"basis index {value} out of range for {num_qubits} qubits")
        return value
    bits = list(value)
    if len(bits) != num_qubits or set(bits) - {0, 1}:
        raise StateValidationError(f"bad basis bits {bits!r} for {num_qubits} qubits")
    return int("".join(str(b) for b in bits), 2)


def basis_state(num_qubits: int, value: BitsLike) -> QuantumState:
    """Computational basis state |value> on num_qubits qubits."""
    _check_qubit_count(num_qubits, pure=True)
    vec = np.zeros(2**num_qubits, dtype=np.complex128)
    vec[_basis_index(num_qubits, value)] = 1.0
    vec.setflags(write=False)
    return QuantumState(num_qubits=num_qubits, data=vec, pure=True)


def zero_state(num_qubits: int) -> QuantumState:
    return basis_state(num_qubits, 0)


def maximally_mixed_state(num_qubits: int) -> QuantumState:
    _check_qubit_count(num_qubits, pure=False)
    dim = 2**num_qubits
    rho = np.eye(dim, dtype=np.complex128) / dim
    rho.setflags(write=False)
    return QuantumState(num_qubits=num_qubits, data=rho, pure=False)


def compact_state(state: QuantumState, atol: float = 1e-9) -> QuantumState:
    """The same state in vector form when its operator has rank one.

    Density operators come out of partial traces even when the result is
    actually pure; recovering the vector keeps later circuits on the
    statevector path.  States of higher rank pass through unchanged.
    """
    if state.pure:
        return state
    rho = state.density()
    purity = float(np.real(np.vdot(rho.ravel(), rho.ravel())))
    if abs(purity - 1.0) > atol:
        return state
    col = int(np.argmax(np.abs(np.diagonal(rho))))
    vec = rho[:, col].copy()
    norm = float(np.linalg.norm(vec))
    if norm <= atol:
        return state
    return QuantumState.from_vector(vec / norm)


def states_close(a: QuantumState, b: QuantumState, atol: float = _ATOL) -> bool:
    """Equality of the underlying operators up to atol (not phase-invariant)."""
    if a.num_qubits != b.num_qubits:
        return False
    return bool(np.allclose(a.density(), b.density(), atol=atol))
