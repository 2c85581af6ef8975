"""Seeded randomness helpers: Haar-ish states, unitaries, and circuits."""

from __future__ import annotations

from typing import Union

import numpy as np

from .circuit import QuantumCircuit
from .gates import custom, named
from .state import PURE_QUBIT_LIMIT, QuantumState, QubitLimitError

Rng = np.random.Generator


def coerce_rng(rng: Union[int, Rng, None]) -> Rng:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def sample_random_state(num_qubits: int, rng: Union[int, Rng, None] = None) -> QuantumState:
    """Haar-random pure state: normalized complex Gaussian amplitudes."""
    if num_qubits > PURE_QUBIT_LIMIT:
        raise QubitLimitError(
            f"{num_qubits} qubits exceeds the pure-state ceiling of {PURE_QUBIT_LIMIT}"
        )
    gen = coerce_rng(rng)
    raw = gen.normal(size=2 ** (num_qubits + 1))
    vec = raw[0::2] + 1j * raw[1::2]
    return QuantumState.from_vector(vec / np.linalg.norm(vec))


def random_unitary(dim: int, rng: Union[int, Rng, None] = None) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    gen = coerce_rng(rng)
    raw = gen.normal(size=(dim, dim)) + 1j * gen.normal(size=(dim, dim))
    q, r = np.linalg.qr(raw)
    # fix the phase convention so the distribution is Haar
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_density(num_qubits: int, rng: Union[int, Rng, None] = None, rank: int = 0) -> QuantumState:
    """Random mixed state: a Haar unitary applied to a random spectrum."""
    gen = coerce_rng(rng)
    dim = 2**num_qubits
    if rank < 1:
        rank = dim
    weights = gen.random(rank)
    weights = weights / weights.sum()
    spectrum = np.zeros(dim)
    spectrum[:rank] = weights
    u = random_unitary(dim, gen)
    rho = (u * spectrum) @ u.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return QuantumState.from_density(rho)


_ONE_QUBIT_NAMES = ("h", "x", "y", "z", "s", "t")


def random_circuit(
    num_qubits: int,
    num_gates: int,
    rng: Union[int, Rng, None] = None,
    allow_custom: bool = True,
) -> QuantumCircuit:
    """A random unitary-only circuit over a small universal-ish gate set."""
    gen = coerce_rng(rng)
    gates = []
    for _ in range(num_gates):
        kind = int(gen.integers(0, 4 if allow_custom and num_qubits >= 1 else 3))
        if kind == 0:
            name = _ONE_QUBIT_NAMES[int(gen.integers(0, len(_ONE_QUBIT_NAMES)))]
            gates.append(named(name, int(gen.integers(0, num_qubits))))
        elif kind == 1 and num_qubits >= 2:
            a, b = gen.choice(num_qubits, size=2, replace=False)
            gates.append(named("x", int(b)).with_controls((int(a),), (1,)))
        elif kind == 2 and num_qubits >= 2:
            a, b = gen.choice(num_qubits, size=2, replace=False)
            gates.append(named("z", int(b)).with_controls((int(a),), (1,)))
        elif kind == 3:
            t = int(gen.integers(0, num_qubits))
            gates.append(custom(random_unitary(2, gen), (t,)))
        else:
            gates.append(named("h", int(gen.integers(0, num_qubits))))
    return QuantumCircuit(arity=num_qubits, gates=tuple(gates))
