"""Program obfuscation interfaces and the two concrete obfuscators.

An obfuscated program is either a classical description (text) or a
quantum advice state, always tagged with the interpreter that knows how
to execute it.  ``interpret`` is the universal execution entry point: it
parses-and-runs classical descriptions, and runs the registered
interpreter circuit on payload (x) input for advice states.

The plain obfuscator just canonically serializes the circuit.  It is a
correct obfuscator with zero security, which is exactly its role here:
the attacks in :mod:`qcryptlab.obfuscation.family` succeed against any
obfuscator whose output can be executed, and the plain one is the
executable witness of that fact.

The point-state obfuscator covers the other program form: it encodes a
point circuit (marked input a, XOR mask b on the second register) as the
basis state |a, b>, executed by a dispatch interpreter whose controlled
gates read the advice register coherently.  On basis-state advice this
matches measure-then-dispatch exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Protocol, Sequence, Tuple, Union

import numpy as np

from ..bitstrings import check_bits
from ..simulator import (
    Gate,
    QuantumCircuit,
    QuantumState,
    SimulatorError,
    named,
    parse_circuit,
    run_circuit,
    serialize_circuit,
)


class ObfuscationError(Exception):
    pass


class MalformedProgramError(ObfuscationError):
    pass


class ProgramExhaustedError(ObfuscationError):
    """The program's use counter hit zero."""


CLASSICAL_FORM = "classical-description"
STATE_FORM = "quantum-state"


@dataclass
class ObfuscatedProgram:
    """Executable program handle produced by an obfuscator.

    ``uses_remaining`` of None means unbounded; otherwise each
    interpretation consumes one use and a drained program refuses to run.
    The counter is owned by this handle alone (handles are not copied).
    """

    form: str
    arity: int
    interpreter_id: str
    payload: Union[str, QuantumState]
    uses_remaining: Optional[int] = None

    def __post_init__(self) -> None:
        if self.form not in (CLASSICAL_FORM, STATE_FORM):
            raise MalformedProgramError(f"unknown program form {self.form!r}")
        if self.form == CLASSICAL_FORM and not isinstance(self.payload, str):
            raise MalformedProgramError("classical form needs a text payload")
        if self.form == STATE_FORM and not isinstance(self.payload, QuantumState):
            raise MalformedProgramError("state form needs a QuantumState payload")
        if self.uses_remaining is not None and self.uses_remaining < 0:
            raise MalformedProgramError("uses_remaining cannot be negative")

    def consume_use(self) -> None:
        if self.uses_remaining is None:
            return
        if self.uses_remaining == 0:
            raise ProgramExhaustedError("program has no uses left")
        self.uses_remaining -= 1

    def description_size(self) -> int:
        if self.form == CLASSICAL_FORM:
            return len(self.payload)
        return self.payload.num_qubits


InterpreterBuilder = Callable[[int, int], QuantumCircuit]

_INTERPRETERS: Dict[str, InterpreterBuilder] = {}


def register_interpreter(interpreter_id: str, builder: InterpreterBuilder) -> None:
    _INTERPRETERS[interpreter_id] = builder


def interpreter_circuit(interpreter_id: str, advice_qubits: int, data_qubits: int) -> QuantumCircuit:
    if interpreter_id not in _INTERPRETERS:
        raise MalformedProgramError(f"no interpreter registered under {interpreter_id!r}")
    return _INTERPRETERS[interpreter_id](advice_qubits, data_qubits)


def interpret(
    program: ObfuscatedProgram,
    state: QuantumState,
    rng: Optional[np.random.Generator] = None,
) -> QuantumState:
    """Execute an obfuscated program on an input state.

    Classical descriptions are parsed and run directly.  Advice states are
    run through the registered interpreter circuit on payload (x) input,
    and the data register is returned.  Consumes one use either way.
    """
    if state.num_qubits != program.arity:
        raise ObfuscationError(
            f"program arity is {program.arity}, input has {state.num_qubits} qubits"
        )
    program.consume_use()
    if program.form == CLASSICAL_FORM:
        try:
            circuit = parse_circuit(program.payload)
        except SimulatorError as exc:
            raise MalformedProgramError(f"payload does not parse: {exc}") from exc
        if circuit.arity != program.arity:
            raise MalformedProgramError(
                f"payload arity {circuit.arity} contradicts program arity {program.arity}"
            )
        return run_circuit(circuit, state, rng=rng)
    advice = program.payload
    joint = advice.tensor(state)
    j_circ = interpreter_circuit(program.interpreter_id, advice.num_qubits, state.num_qubits)
    if j_circ.arity != joint.num_qubits:
        raise MalformedProgramError(
            f"interpreter arity {j_circ.arity} does not match advice+input "
            f"{joint.num_qubits}"
        )
    data_register = tuple(range(advice.num_qubits, advice.num_qubits + state.num_qubits))
    j_with_output = QuantumCircuit(
        arity=j_circ.arity, gates=j_circ.gates, output_spec=data_register
    )
    return run_circuit(j_with_output, joint, rng=rng)


def default_expansion_bound(circuit: QuantumCircuit) -> int:
    """Generous polynomial ceiling on description size for desk circuits."""
    cells = sum(4 ** len(g.targets) for g in circuit.gates) + circuit.arity + 1
    return 64 * (cells + 4) ** 2


class Obfuscator(Protocol):
    """Compiles circuits into programs some registered interpreter runs."""

    interpreter_id: str

    def obfuscate(
        self, circuit: Union[QuantumCircuit, CombinedCircuit], randomness: str = ""
    ) -> ObfuscatedProgram:
        ...


class PlainObfuscator:
    """Obfuscation by canonical serialization: correct, reusable, zero hiding.

    The randomness argument is accepted for interface parity and absorbed:
    the canonical form is already a deterministic function of the circuit,
    so the output depends only on (circuit, nothing).
    """

    interpreter_id = "classical-v1"

    def __init__(self, expansion_bound: Callable[[QuantumCircuit], int] = default_expansion_bound):
        self.expansion_bound = expansion_bound

    def obfuscate(
        self, circuit: Union[QuantumCircuit, CombinedCircuit], randomness: str = ""
    ) -> ObfuscatedProgram:
        if randomness:
            check_bits(randomness)
        if isinstance(circuit, CombinedCircuit):
            circuit = circuit.as_circuit()
        text = serialize_circuit(circuit)
        limit = self.expansion_bound(circuit)
        if len(text) > limit:
            raise ObfuscationError(
                f"description of {len(text)} bytes exceeds the expansion bound {limit}"
            )
        return ObfuscatedProgram(
            form=CLASSICAL_FORM,
            arity=circuit.arity,
            interpreter_id=self.interpreter_id,
            payload=text,
            uses_remaining=None,
        )


_DEFAULT_PLAIN = PlainObfuscator()


def plain_obfuscate(
    circuit: Union[QuantumCircuit, CombinedCircuit], randomness: str = ""
) -> ObfuscatedProgram:
    return _DEFAULT_PLAIN.obfuscate(circuit, randomness)


def make_point_circuit(a: str, b: str) -> QuantumCircuit:
    """Circuit on |x, y>: XOR ``b`` into the second register exactly when x = a.

    The first register has len(a) qubits, the second len(b); each set bit
    of b becomes one X gate controlled on the full pattern a.
    """
    check_bits(a)
    check_bits(b)
    n, m = len(a), len(b)
    if n < 1 or m < 1:
        raise ObfuscationError("point circuit needs nonempty registers")
    pattern = tuple(int(bit) for bit in a)
    controls = tuple(range(n))
    gates: List[Gate] = []
    for j, bit in enumerate(b):
        if bit == "1":
            gates.append(named("x", n + j).with_controls(controls, pattern))
    return QuantumCircuit(arity=n + m, gates=tuple(gates))


def point_circuit_parameters(circuit: QuantumCircuit, n: int, m: int) -> Tuple[str, str]:
    """Recover (a, b) from a circuit built like make_point_circuit.

    The empty circuit reads as b = 0 (any marked input; a defaults to 0).
    Raises MalformedProgramError when the gates do not fit the shape.
    """
    if circuit.arity != n + m:
        raise MalformedProgramError(
            f"expected arity {n + m}, got {circuit.arity}"
        )
    a_bits: Optional[Tuple[int, ...]] = None
    b_bits = [0] * m
    controls = tuple(range(n))
    for g in circuit.gates:
        if g.kind != "named" or g.name != "x" or g.controls != controls:
            raise MalformedProgramError("gate does not match the point-circuit shape")
        target = g.targets[0]
        if not n <= target < n + m:
            raise MalformedProgramError(f"target {target} outside the second register")
        if a_bits is None:
            a_bits = g.control_pattern
        elif a_bits != g.control_pattern:
            raise MalformedProgramError("inconsistent control patterns")
        b_bits[target - n] ^= 1
    a = "".join(str(bit) for bit in (a_bits or (0,) * n))
    b = "".join(str(bit) for bit in b_bits)
    return a, b


POINT_DISPATCH_INTERPRETER = "point-dispatch-v1"


def _build_point_dispatch(advice_qubits: int, data_qubits: int) -> QuantumCircuit:
    """Dispatch interpreter for point-circuit advice |a, b>.

    Registers: advice (n + m qubits) then data (n + m qubits).  For every
    candidate marked value a' and every mask position j, flip data y_j when
    the advice first half equals a', the advice mask bit j is set, and the
    data first half equals a'.  Coherent, and equal to measure-then-dispatch
    on basis advice.
    """
    if advice_qubits != data_qubits:
        raise MalformedProgramError(
            "point dispatch needs advice and data registers of equal size"
        )
    if advice_qubits % 2 != 0:
        raise MalformedProgramError("point advice has an (a, b) split, so even size")
    n = advice_qubits // 2
    m = advice_qubits - n
    base = advice_qubits
    gates: List[Gate] = []
    for a_val in range(2**n):
        a_pat = tuple(int(bit) for bit in format(a_val, f"0{n}b"))
        for j in range(m):
            controls = tuple(range(n)) + (n + j,) + tuple(base + i for i in range(n))
            pattern = a_pat + (1,) + a_pat
            gates.append(named("x", base + n + j).with_controls(controls, pattern))
    return QuantumCircuit(arity=advice_qubits + data_qubits, gates=tuple(gates))


register_interpreter(POINT_DISPATCH_INTERPRETER, _build_point_dispatch)


class PointStateObfuscator:
    """Encodes point circuits as advice states for the dispatch interpreter.

    ``uses`` bounds how many times the advice handle may be interpreted,
    standing in for the consumption of a bounded advice supply.
    """

    interpreter_id = POINT_DISPATCH_INTERPRETER

    def __init__(self, uses: Optional[int] = 1):
        self.uses = uses

    def obfuscate(self, circuit: QuantumCircuit, randomness: str = "") -> ObfuscatedProgram:
        if circuit.arity % 2 != 0:
            raise ObfuscationError("point-state form needs an even-arity point circuit")
        n = circuit.arity // 2
        a, b = point_circuit_parameters(circuit, n, n)
        from ..simulator import basis_state

        advice = basis_state(2 * n, a + b)
        return ObfuscatedProgram(
            form=STATE_FORM,
            arity=2 * n,
            interpreter_id=self.interpreter_id,
            payload=advice,
            uses_remaining=self.uses,
        )


# ---------------------------------------------------------------------------
# Branch combination


@dataclass(frozen=True)
class CombinedCircuit:
    """Several equal-arity unitary branches behind a basis-valued selector.

    Selector qubits come first; selector value i routes the input register
    through branch i and leaves the selector unchanged.
    """

    branches: Tuple[QuantumCircuit, ...]

    def __post_init__(self) -> None:
        if len(self.branches) < 2:
            raise ObfuscationError("need at least two branches to combine")
        arities = {c.arity for c in self.branches}
        if len(arities) != 1:
            raise ObfuscationError(f"branches disagree on arity: {sorted(arities)}")
        for i, c in enumerate(self.branches):
            if not c.is_unitary:
                raise ObfuscationError(f"branch {i} is not purely unitary")
            if c.output_spec is not None:
                raise ObfuscationError(f"branch {i} carries an output spec")

    @property
    def selector_width(self) -> int:
        return max(1, math.ceil(math.log2(len(self.branches))))

    @property
    def branch_arity(self) -> int:
        return self.branches[0].arity

    @property
    def arity(self) -> int:
        return self.selector_width + self.branch_arity

    def as_circuit(self) -> QuantumCircuit:
        sel = self.selector_width
        selector_qubits = tuple(range(sel))
        gates: List[Gate] = []
        for index, branch in enumerate(self.branches):
            pattern = tuple(int(bit) for bit in format(index, f"0{sel}b"))
            for g in branch.gates:
                gates.append(g.shifted(sel).with_controls(selector_qubits, pattern))
        return QuantumCircuit(arity=self.arity, gates=tuple(gates))


def combine(branches: Sequence[QuantumCircuit]) -> CombinedCircuit:
    """Switchyard over k branches; gate count is the sum of branch sizes."""
    return CombinedCircuit(branches=tuple(branches))


def make_checker_circuit(a: str, b: str, advice_qubits: Optional[int] = None) -> QuantumCircuit:
    """Coherent test of interpreter advice against a target point (a, b).

    Input register: the advice state (2n qubits for the registered
    dispatch interpreter).  The circuit allocates a work register plus a
    single result qubit, writes x = a into the work register's first
    half, runs the dispatch interpreter, flips the result qubit when the
    work register's second half reads b, then reruns the interpreter to
    uncompute and discards the clean work register.  Output is the
    advice followed by the result qubit.

    On basis advice |a', b'> with b nonzero the result is 1 exactly when
    (a', b') = (a, b); advice for the do-nothing circuit (b' = 0) fires
    only in the degenerate target b = 0.  Over uniform targets a random
    basis advice state fires with probability at most 2^-n.

    The work-register discard routes through the density representation,
    so the working width 4n + 1 must stay at or under the mixed-state
    ceiling; n = 2 is the intended scale.
    """
    check_bits(a)
    check_bits(b)
    if len(a) != len(b):
        raise ObfuscationError("checker expects equal-length a and b")
    n = len(a)
    adv = 2 * n
    if advice_qubits is not None and advice_qubits != adv:
        raise MalformedProgramError(
            f"no interpreter registered for {advice_qubits}-qubit advice with "
            f"{n}-bit targets"
        )
    from ..simulator import alloc, discard

    gates: List[Gate] = []
    for q in range(adv, 2 * adv):
        gates.append(alloc(q))
    gates.append(alloc(2 * adv))
    flag = 2 * adv
    for j, bit in enumerate(a):
        if bit == "1":
            gates.append(named("x", adv + j))
    dispatch = _build_point_dispatch(adv, adv).gates
    gates.extend(dispatch)
    compare_pattern = tuple(int(bit) for bit in b)
    gates.append(named("x", flag).with_controls(tuple(range(adv + n, 2 * adv)), compare_pattern))
    gates.extend(reversed(dispatch))
    for j, bit in enumerate(a):
        if bit == "1":
            gates.append(named("x", adv + j))
    for _ in range(adv):
        gates.append(discard(adv))
    return QuantumCircuit(arity=adv, gates=tuple(gates))


def extract_branch_gates(
    circuit: QuantumCircuit, selector_width: int, branch_index: int
) -> List[Gate]:
    """Pull one branch back out of a combined circuit's flat gate list.

    Returns the branch's gates renumbered to branch-local coordinates.
    This is public structure, not a break: the selector controls are part
    of the honest description format.
    """
    pattern = tuple(int(bit) for bit in format(branch_index, f"0{selector_width}b"))
    selector_qubits = tuple(range(selector_width))
    out: List[Gate] = []
    for g in circuit.gates:
        if g.controls[:selector_width] != selector_qubits:
            continue
        if g.control_pattern[:selector_width] != pattern:
            continue
        out.append(
            Gate(
                kind=g.kind,
                targets=tuple(t - selector_width for t in g.targets),
                name=g.name,
                matrix=g.matrix,
                controls=tuple(c - selector_width for c in g.controls[selector_width:]),
                control_pattern=g.control_pattern[selector_width:],
            )
        )
    return out
