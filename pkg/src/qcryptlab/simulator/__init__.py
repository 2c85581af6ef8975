"""Dense quantum circuit simulation with the primitives the lab needs.

Everything is explicit linear algebra on numpy arrays: statevectors up to
20 qubits, density operators up to 12.  No external quantum framework is
involved; circuits, Pauli strings, metrics, and oracles are all defined
here so the cryptographic modules can treat them as a closed toolbox.
"""

from .state import (
    MIXED_QUBIT_LIMIT,
    PURE_QUBIT_LIMIT,
    QuantumState,
    QubitLimitError,
    SimulatorError,
    StateValidationError,
    basis_state,
    compact_state,
    maximally_mixed_state,
    states_close,
    zero_state,
)
from .gates import (
    Gate,
    GateValidationError,
    NAMED_GATES,
    alloc,
    ccx,
    controlled,
    custom,
    cx,
    cz,
    discard,
    measure,
    named,
)
from .circuit import (
    CircuitValidationError,
    QuantumCircuit,
    SerializationError,
    identity_circuit,
    parse_circuit,
    serialize_circuit,
)
from .engine import (
    BasisPathUnsupported,
    MeasurementNeedsRng,
    basis_value,
    circuit_unitary,
    partial_trace,
    project_qubit,
    run_circuit,
    sample_basis,
    simulate_basis,
)
from .pauli import (
    PauliString,
    all_pauli_strings,
    pauli_apply,
    pauli_gate_list,
    pauli_mixture,
)
from .metrics import (
    ChannelDistanceResult,
    channel_distance_estimate,
    fidelity,
    phase_invariant_distance,
    trace_distance,
)
from .oracle import CountingOracle
from .random import (
    coerce_rng,
    random_circuit,
    random_density,
    random_unitary,
    sample_random_state,
)

__all__ = [
    "MIXED_QUBIT_LIMIT",
    "PURE_QUBIT_LIMIT",
    "QuantumState",
    "QubitLimitError",
    "SimulatorError",
    "StateValidationError",
    "basis_state",
    "compact_state",
    "maximally_mixed_state",
    "states_close",
    "zero_state",
    "Gate",
    "GateValidationError",
    "NAMED_GATES",
    "alloc",
    "ccx",
    "controlled",
    "custom",
    "cx",
    "cz",
    "discard",
    "measure",
    "named",
    "CircuitValidationError",
    "QuantumCircuit",
    "SerializationError",
    "identity_circuit",
    "parse_circuit",
    "serialize_circuit",
    "BasisPathUnsupported",
    "MeasurementNeedsRng",
    "basis_value",
    "circuit_unitary",
    "partial_trace",
    "project_qubit",
    "run_circuit",
    "sample_basis",
    "simulate_basis",
    "PauliString",
    "all_pauli_strings",
    "pauli_apply",
    "pauli_gate_list",
    "pauli_mixture",
    "ChannelDistanceResult",
    "channel_distance_estimate",
    "fidelity",
    "phase_invariant_distance",
    "trace_distance",
    "CountingOracle",
    "coerce_rng",
    "random_circuit",
    "random_density",
    "random_unitary",
    "sample_random_state",
]
