"""Query-counted black-box access to a hidden circuit.

The oracle grants forward application only: no inverse, no controlled
version, and no way to read the hidden description back out.  Every call,
quantum or classical-basis, increments the query counter exactly once.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np

from .circuit import QuantumCircuit
from .engine import run_circuit, simulate_basis
from .state import QuantumState, SimulatorError


class CountingOracle:
    """Wraps a circuit; exposes only its arity and forward application."""

    def __init__(self, hidden_circuit: QuantumCircuit):
        self._circuit = hidden_circuit
        self._queries = 0

    @property
    def arity(self) -> int:
        return self._circuit.arity

    @property
    def query_count(self) -> int:
        return self._queries

    def apply(
        self, state: QuantumState, rng: Optional[np.random.Generator] = None
    ) -> QuantumState:
        """Forward application of the hidden circuit.  Counts one query."""
        if state.num_qubits != self._circuit.arity:
            raise SimulatorError(
                f"oracle arity is {self._circuit.arity}, got {state.num_qubits} qubits"
            )
        self._queries += 1
        return run_circuit(self._circuit, state, rng=rng)

    def apply_basis(self, bits: Sequence[int]) -> Tuple[int, ...]:
        """Forward application to a computational basis value.  Counts one query.

        Only available when the hidden circuit preserves the basis; phases
        are not observable through this path.
        """
        self._queries += 1
        return simulate_basis(self._circuit, bits)
