"""Distance and fidelity helpers against closed-form linear algebra.

Oracle values come from the textbook formulas computed inline with
numpy: trace distance as half the nuclear norm of the difference,
fidelity of pure states as the squared overlap.
"""

import math

import numpy as np
import pytest

from qcryptlab.simulator import (
    QuantumCircuit,
    SimulatorError,
    basis_state,
    channel_distance_estimate,
    fidelity,
    named,
    phase_invariant_distance,
    run_circuit,
    sample_random_state,
    trace_distance,
    zero_state,
)


def nuclear_half(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.linalg.svd(a - b, compute_uv=False)))


def plus_state():
    return run_circuit(QuantumCircuit(arity=1, gates=(named("h", 0),)), zero_state(1))


def test_trace_distance_orthogonal_states_is_one():
    assert abs(trace_distance(basis_state(1, "0"), basis_state(1, "1")) - 1.0) < 1e-12


def test_trace_distance_zero_plus_matches_closed_form():
    # pure states: D = sqrt(1 - |<a|b>|^2) = sqrt(1 - 1/2)
    want = math.sqrt(1.0 - 0.5)
    assert abs(trace_distance(zero_state(1), plus_state()) - want) < 1e-10


def test_trace_distance_agrees_with_nuclear_norm_on_random_states():
    rng = np.random.default_rng(17)
    for _ in range(5):
        a = sample_random_state(2, rng)
        b = sample_random_state(2, rng)
        want = nuclear_half(a.density(), b.density())
        assert abs(trace_distance(a, b) - want) < 1e-10


def test_trace_distance_is_zero_on_equal_states():
    a = sample_random_state(3, np.random.default_rng(1))
    assert trace_distance(a, a) < 1e-12


def test_fidelity_is_squared_overlap_for_pure_states():
    rng = np.random.default_rng(23)
    a = sample_random_state(2, rng)
    b = sample_random_state(2, rng)
    want = abs(np.vdot(a.vector(), b.vector())) ** 2
    assert abs(fidelity(a, b) - want) < 1e-10


def test_fidelity_handles_mixed_arguments():
    from qcryptlab.simulator import maximally_mixed_state

    assert abs(fidelity(basis_state(1, "0"), maximally_mixed_state(1)) - 0.5) < 1e-10


def test_fidelity_bounds():
    a = basis_state(2, "00")
    assert abs(fidelity(a, a) - 1.0) < 1e-12
    assert fidelity(a, basis_state(2, "11")) < 1e-12


def test_phase_invariant_distance_ignores_global_phase():
    z = QuantumCircuit(arity=1, gates=(named("z", 0),))
    minus_z = QuantumCircuit(
        arity=1, gates=(named("z", 0), named("x", 0), named("z", 0), named("x", 0), named("z", 0))
    )
    # X Z X = -Z, so the gate list above is Z * (-Z) * Z = -Z
    assert phase_invariant_distance(z, minus_z) < 1e-10


def test_phase_invariant_distance_z_vs_wire():
    z = QuantumCircuit(arity=1, gates=(named("z", 0),))
    wire = QuantumCircuit(arity=1, gates=())
    assert abs(phase_invariant_distance(z, wire) - math.sqrt(2.0)) < 1e-10


def test_phase_invariant_distance_needs_equal_arity():
    with pytest.raises(SimulatorError):
        phase_invariant_distance(
            QuantumCircuit(arity=1, gates=()), QuantumCircuit(arity=2, gates=())
        )


def test_channel_estimate_separates_x_from_wire():
    x = QuantumCircuit(arity=1, gates=(named("x", 0),))
    wire = QuantumCircuit(arity=1, gates=())
    result = channel_distance_estimate(x, wire, rng=np.random.default_rng(0))
    assert result.estimate >= 0.99
    assert 0.0 <= result.lower <= result.estimate <= 1.0 + 1e-12


def test_channel_estimate_of_identical_channels_is_zero():
    wire = QuantumCircuit(arity=2, gates=())
    result = channel_distance_estimate(wire, wire, rng=np.random.default_rng(0))
    assert result.estimate < 1e-10


def test_channel_estimate_is_deterministic_given_seeded_rng():
    z = QuantumCircuit(arity=1, gates=(named("z", 0),))
    wire = QuantumCircuit(arity=1, gates=())
    a = channel_distance_estimate(z, wire, rng=np.random.default_rng(9)).estimate
    b = channel_distance_estimate(z, wire, rng=np.random.default_rng(9)).estimate
    assert a == b
