"""Program container, plain obfuscator, point circuits, combined circuits."""

import numpy as np
import pytest

from qcryptlab.obfuscation import (
    CLASSICAL_FORM,
    POINT_DISPATCH_INTERPRETER,
    CombinedCircuit,
    MalformedProgramError,
    ObfuscatedProgram,
    ObfuscationError,
    PlainObfuscator,
    PointStateObfuscator,
    ProgramExhaustedError,
    STATE_FORM,
    combine,
    default_expansion_bound,
    extract_branch_gates,
    interpret,
    interpreter_circuit,
    make_checker_circuit,
    make_point_circuit,
    plain_obfuscate,
    point_circuit_parameters,
)
from qcryptlab.simulator import (
    QuantumCircuit,
    basis_state,
    basis_value,
    identity_circuit,
    named,
    run_circuit,
    sample_random_state,
    serialize_circuit,
    states_close,
    trace_distance,
    zero_state,
)


def _point(a="10", b="1"):
    return make_point_circuit(a, b)


# --- point circuits -------------------------------------------------------


def test_make_point_circuit_truth_table():
    circuit = _point("10", "1")
    assert circuit.arity == 3
    for v in range(4):
        x = f"{v:02b}"
        out = run_circuit(circuit, basis_state(3, x + "0"))
        expected = x + ("1" if x == "10" else "0")
        assert basis_value(out) == expected


def test_make_point_circuit_xors_into_the_payload():
    circuit = _point("01", "1")
    out = run_circuit(circuit, basis_state(3, "011"))
    assert basis_value(out) == "010"  # hit flips the loaded payload back


def test_make_point_circuit_multibit_payload():
    circuit = make_point_circuit("1", "101")
    out = run_circuit(circuit, basis_state(4, "1000"))
    assert basis_value(out) == "1101"
    miss = run_circuit(circuit, basis_state(4, "0000"))
    assert basis_value(miss) == "0000"


def test_make_point_circuit_rejects_empty_registers():
    with pytest.raises(ObfuscationError):
        make_point_circuit("", "1")
    with pytest.raises(ObfuscationError):
        make_point_circuit("1", "")


def test_point_circuit_parameters_round_trip():
    for a, b in [("10", "1"), ("01", "11"), ("111", "001")]:
        circuit = make_point_circuit(a, b)
        assert point_circuit_parameters(circuit, len(a), len(b)) == (a, b)


def test_point_circuit_parameters_empty_circuit_is_the_zero_point():
    empty = QuantumCircuit(arity=3, gates=())
    assert point_circuit_parameters(empty, 2, 1) == ("00", "0")


def test_point_circuit_parameters_rejects_foreign_shapes():
    h = QuantumCircuit(arity=3, gates=(named("h", 0),))
    with pytest.raises(MalformedProgramError):
        point_circuit_parameters(h, 2, 1)


# --- program container ----------------------------------------------------


def test_program_validates_form_payload_pairing():
    with pytest.raises(MalformedProgramError):
        ObfuscatedProgram(
            form=CLASSICAL_FORM, arity=1, interpreter_id="x", payload=zero_state(1)
        )
    with pytest.raises(MalformedProgramError):
        ObfuscatedProgram(form=STATE_FORM, arity=1, interpreter_id="x", payload="gates")
    with pytest.raises(MalformedProgramError):
        ObfuscatedProgram(
            form=CLASSICAL_FORM, arity=1, interpreter_id="x", payload="g", uses_remaining=-1
        )
    with pytest.raises(MalformedProgramError):
        ObfuscatedProgram(form="analog", arity=1, interpreter_id="x", payload="g")


def test_uses_budget_counts_down_and_exhausts():
    program = ObfuscatedProgram(
        form=CLASSICAL_FORM,
        arity=1,
        interpreter_id="classical-v1",
        payload=serialize_circuit(identity_circuit(1)),
        uses_remaining=2,
    )
    interpret(program, zero_state(1))
    assert program.uses_remaining == 1
    interpret(program, zero_state(1))
    with pytest.raises(ProgramExhaustedError):
        interpret(program, zero_state(1))


def test_unlimited_use_never_exhausts():
    program = plain_obfuscate(_point())
    assert program.uses_remaining is None
    for _ in range(5):
        interpret(program, zero_state(3))
    assert program.uses_remaining is None


def test_description_size_counts_payload_characters_or_qubits():
    program = plain_obfuscate(_point())
    assert program.description_size() == len(program.payload)
    advice = PointStateObfuscator().obfuscate(make_point_circuit("10", "01"))
    assert advice.description_size() == 4


# --- plain obfuscator -----------------------------------------------------


def test_plain_obfuscator_preserves_functionality():
    circuit = _point("11", "1")
    program = plain_obfuscate(circuit)
    assert program.form == CLASSICAL_FORM
    assert program.interpreter_id == "classical-v1"
    rng = np.random.default_rng(3)
    psi = sample_random_state(3, rng)
    assert trace_distance(interpret(program, psi), run_circuit(circuit, psi)) < 1e-12


def test_plain_obfuscator_canonicalizes():
    a = PlainObfuscator().obfuscate(_point())
    b = PlainObfuscator().obfuscate(_point())
    assert a.payload == b.payload


def test_plain_obfuscator_enforces_its_expansion_bound():
    circuit = _point("1010", "11")
    assert default_expansion_bound(circuit) > len(serialize_circuit(circuit))
    tight = PlainObfuscator(expansion_bound=lambda c: 4)
    with pytest.raises(ObfuscationError):
        tight.obfuscate(circuit)


def test_interpret_checks_arity_and_interpreter():
    program = plain_obfuscate(_point())  # arity 3
    with pytest.raises(ObfuscationError):
        interpret(program, zero_state(2))
    rogue = ObfuscatedProgram(
        form=CLASSICAL_FORM, arity=1, interpreter_id="missing", payload="x"
    )
    with pytest.raises(MalformedProgramError):
        interpret(rogue, zero_state(1))
    with pytest.raises(MalformedProgramError):
        interpreter_circuit("missing", 2, 2)
    dispatch = interpreter_circuit(POINT_DISPATCH_INTERPRETER, 4, 4)
    assert dispatch.arity == 8


def test_interpret_rejects_unparseable_payloads():
    junk = ObfuscatedProgram(
        form=CLASSICAL_FORM, arity=2, interpreter_id="classical-v1", payload="not gates"
    )
    with pytest.raises(MalformedProgramError):
        interpret(junk, zero_state(2))


# --- single-use state obfuscator ------------------------------------------


def test_point_state_obfuscator_evaluates_once():
    # the dispatch interpreter wants matching input and payload widths
    circuit = make_point_circuit("10", "01")
    program = PointStateObfuscator().obfuscate(circuit)
    assert program.form == STATE_FORM
    assert program.uses_remaining == 1
    out = interpret(program, basis_state(4, "1000"))
    assert basis_value(out) == "1001"
    with pytest.raises(ProgramExhaustedError):
        interpret(program, basis_state(4, "1000"))


def test_point_state_obfuscator_misses_cleanly():
    program = PointStateObfuscator().obfuscate(make_point_circuit("10", "01"))
    out = interpret(program, basis_state(4, "0100"))
    assert basis_value(out) == "0100"


def test_point_state_obfuscator_rejects_uneven_shapes():
    with pytest.raises(ObfuscationError):
        PointStateObfuscator().obfuscate(_point("10", "1"))


def test_point_state_advice_is_the_parameter_pair():
    program = PointStateObfuscator().obfuscate(make_point_circuit("01", "11"))
    assert states_close(program.payload, basis_state(4, "0111"))


# --- combined circuits ----------------------------------------------------


def test_combined_circuit_needs_two_equal_arity_branches():
    with pytest.raises(ObfuscationError):
        CombinedCircuit(branches=(_point(),))
    with pytest.raises(ObfuscationError):
        CombinedCircuit(branches=(_point("10", "1"), _point("1", "1")))
    with pytest.raises(ObfuscationError):
        CombinedCircuit(
            branches=(
                _point(),
                QuantumCircuit(arity=3, gates=(named("h", 0),), output_spec=(0,)),
            )
        )


def test_combined_circuit_routes_on_the_selector():
    left = _point("10", "1")
    right = QuantumCircuit(arity=3, gates=(named("x", 2),))
    merged = combine((left, right))
    assert merged.selector_width == 1
    circuit = merged.as_circuit()
    assert circuit.arity == 4
    # selector 0: point behavior on (x, y)
    out = run_circuit(circuit, basis_state(4, "0" + "100"))
    assert basis_value(out) == "0101"
    # selector 1: unconditional flip of the last qubit
    out = run_circuit(circuit, basis_state(4, "1" + "100"))
    assert basis_value(out) == "1101"
    out = run_circuit(circuit, basis_state(4, "1" + "000"))
    assert basis_value(out) == "1001"


def test_combined_circuit_selector_width_grows():
    branches = tuple(_point("10", "1") for _ in range(3))
    merged = CombinedCircuit(branches=branches)
    assert merged.selector_width == 2
    assert merged.as_circuit().arity == 5


def test_extract_branch_gates_recovers_each_branch():
    left = _point("10", "1")
    right = QuantumCircuit(arity=3, gates=(named("x", 2),))
    merged = combine((left, right))
    circuit = merged.as_circuit()
    for index, original in enumerate((left, right)):
        gates = extract_branch_gates(circuit, merged.selector_width, index)
        rebuilt = QuantumCircuit(arity=3, gates=tuple(gates))
        assert serialize_circuit(rebuilt) == serialize_circuit(original)


def test_checker_circuit_accepts_exactly_the_hidden_pair():
    a, b = "10", "01"
    checker = make_checker_circuit(a, b)
    # output is the advice followed by the result qubit
    hit = run_circuit(checker, basis_state(4, a + b))
    assert basis_value(hit) == a + b + "1"
    for advice in ("1000", "0101", "1011"):
        miss = run_circuit(checker, basis_state(4, advice))
        assert basis_value(miss) == advice + "0"


def test_checker_circuit_shape_validation():
    with pytest.raises(ObfuscationError):
        make_checker_circuit("10", "1")
