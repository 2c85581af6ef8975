"""Pauli strings and the quantum one-time pad.

A Pauli string on n qubits is indexed by 2n bits in the interleaved order
(x1, z1, x2, z2, ..., xn, zn); qubit i carries the operator X^xi Z^zi.
Conjugating by a uniformly random string is the quantum one-time pad: the
average over all 4^n strings of P rho P^dag is the maximally mixed state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from .engine import _apply_unitary_mat, _apply_unitary_vec
from .gates import Gate, named
from .state import QuantumState, StateValidationError

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)


def _normalize_bits(bits: Union[str, Sequence[int]]) -> Tuple[int, ...]:
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise StateValidationError(f"bad bit string {bits!r}")
        return tuple(int(b) for b in bits)
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise StateValidationError(f"bad bit sequence {bits!r}")
    return out


@dataclass(frozen=True)
class PauliString:
    """X^x Z^z on each qubit, indexed by interleaved (x, z) bit pairs."""

    bits: Tuple[int, ...]

    def __init__(self, bits: Union[str, Sequence[int]]):
        norm = _normalize_bits(bits)
        if len(norm) == 0 or len(norm) % 2 != 0:
            raise StateValidationError(
                f"Pauli index needs a positive even number of bits, got {len(norm)}"
            )
        object.__setattr__(self, "bits", norm)

    @property
    def num_qubits(self) -> int:
        return len(self.bits) // 2

    def x_bit(self, qubit: int) -> int:
        return self.bits[2 * qubit]

    def z_bit(self, qubit: int) -> int:
        return self.bits[2 * qubit + 1]

    def single_qubit_matrix(self, qubit: int) -> np.ndarray:
        m = _I2
        if self.z_bit(qubit):
            m = _Z @ m
        if self.x_bit(qubit):
            m = _X @ m
        return m

    def as_unitary(self) -> np.ndarray:
        mat = np.array([[1.0]], dtype=np.complex128)
        for q in range(self.num_qubits):
            mat = np.kron(mat, self.single_qubit_matrix(q))
        return mat

    def is_identity(self) -> bool:
        return all(b == 0 for b in self.bits)

    def as_bit_string(self) -> str:
        return "".join(str(b) for b in self.bits)


def all_pauli_strings(num_qubits: int) -> Iterator[PauliString]:
    for idx in range(4**num_qubits):
        yield PauliString(format(idx, f"0{2 * num_qubits}b"))


def pauli_apply(pauli: PauliString, state: QuantumState, inverse: bool = False) -> QuantumState:
    """Conjugate a state by the Pauli string (or its inverse).

    Maps rho to P rho P^dag; on a pure state it applies P to the vector.
    Applying with the same string twice is the identity, which is what
    decryption of the one-time pad relies on.
    """
    if pauli.num_qubits != state.num_qubits:
        raise StateValidationError(
            f"Pauli on {pauli.num_qubits} qubits cannot act on {state.num_qubits}"
        )
    n = state.num_qubits
    if state.pure:
        buf = state.vector()
        apply_one = lambda g: _apply_unitary_vec(buf, n, g)
    else:
        buf = state.density()
        apply_one = lambda g: _apply_unitary_mat(buf, n, g)
    for q in range(n):
        x, z = pauli.x_bit(q), pauli.z_bit(q)
        # P = X^x Z^z acts Z first; the inverse Z^z X^x acts X first.
        order = ("z", "x") if not inverse else ("x", "z")
        for name in order:
            if name == "x" and x:
                apply_one(named("x", q))
            elif name == "z" and z:
                apply_one(named("z", q))
    if state.pure:
        return QuantumState.from_vector(buf)
    return QuantumState.from_density(buf)


def pauli_mixture(state: QuantumState) -> QuantumState:
    """Average of P rho P^dag over every Pauli string on the state's qubits."""
    n = state.num_qubits
    acc = np.zeros((2**n, 2**n), dtype=np.complex128)
    for p in all_pauli_strings(n):
        acc += pauli_apply(p, state).density()
    return QuantumState.from_density(acc / 4**n)


def pauli_gate_list(
    bits: str,
    offset: int,
    inverse: bool = False,
    controls: Sequence[int] = (),
    pattern: Sequence[int] = (),
) -> List[Gate]:
    """The Pauli string as explicit gates on qubits offset..offset+m-1.

    Forward order per qubit is Z then X (matching the X^x Z^z matrix
    convention); inverse order is X then Z.  Optional controls are
    attached to every gate.
    """
    ps = PauliString(bits)
    ctrl = tuple(controls)
    pat = tuple(pattern)
    order = ("x", "z") if inverse else ("z", "x")
    gates: List[Gate] = []
    for q in range(ps.num_qubits):
        for which in order:
            if which == "x" and ps.x_bit(q):
                g = named("x", offset + q)
            elif which == "z" and ps.z_bit(q):
                g = named("z", offset + q)
            else:
                continue
            if ctrl:
                g = g.with_controls(ctrl, pat)
            gates.append(g)
    return gates
