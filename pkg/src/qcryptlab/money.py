"""Public-key money from published reflection programs.

A banknote is a Haar-random state plus an obfuscated program for the
reflection about that state.  Anyone holding the program can run the
kickback test: put an ancilla in superposition, apply the reflection
conditioned on it, and interfere.  The ancilla reads 1 with probability
equal to the squared overlap between the candidate and the hidden
state, and on accept the candidate collapses back onto the hidden
state exactly, so a genuine note survives any number of checks.

The scheme stands or falls with the obfuscator.  The serializing
obfuscator used here leaves the reflection matrix in the clear, so a
counterfeiter who reads the description wins outright; the query
experiments below therefore grant strategies only counted black-box
access, which is the regime where forging is hard.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from .simulator import (
    CountingOracle,
    Gate,
    QuantumCircuit,
    QuantumState,
    basis_state,
    custom,
    fidelity,
    named,
    parse_circuit,
    partial_trace,
    project_qubit,
    run_circuit,
    sample_basis,
    sample_random_state,
)
from .obfuscation.core import (
    CLASSICAL_FORM,
    ObfuscatedProgram,
    Obfuscator,
    PlainObfuscator,
)

MONEY_QUBIT_CEILING = 6


class MoneyError(Exception):
    pass


@dataclass(frozen=True)
class Bill:
    """One issued note: the state, its public verifier, and a serial."""

    note: QuantumState
    verifier: ObfuscatedProgram
    serial: str

    def __post_init__(self) -> None:
        if not self.note.pure:
            raise MoneyError("a note must be a pure state")
        if self.note.num_qubits != self.verifier.arity:
            raise MoneyError(
                f"note on {self.note.num_qubits} qubits does not match a "
                f"verifier of arity {self.verifier.arity}"
            )


def reflection_about(psi: QuantumState) -> QuantumCircuit:
    """The unitary fixing everything orthogonal to psi and negating psi,
    as a single explicit-matrix gate.  Exponential storage; desk sizes only."""
    if not psi.pure:
        raise MoneyError("reflections are defined for pure states")
    vec = psi.vector()
    mat = np.eye(vec.size, dtype=np.complex128) - 2.0 * np.outer(vec, vec.conj())
    return QuantumCircuit(
        arity=psi.num_qubits, gates=(custom(mat, tuple(range(psi.num_qubits))),)
    )


def mint(
    n: int,
    obf: Optional[Obfuscator] = None,
    rng: Optional[np.random.Generator] = None,
) -> Bill:
    """Issue a fresh note on n qubits.

    The reflection matrix is materialized explicitly, so n is capped
    well below the simulator's own ceilings.
    """
    if not 1 <= n <= MONEY_QUBIT_CEILING:
        raise MoneyError(f"mint supports 1..{MONEY_QUBIT_CEILING} qubits, got {n}")
    if obf is None:
        obf = PlainObfuscator()
    if rng is None:
        rng = np.random.default_rng()
    psi = sample_random_state(n, rng)
    program = obf.obfuscate(reflection_about(psi))
    serial = bytes(rng.integers(0, 256, size=8, dtype=np.uint8)).hex()
    return Bill(note=psi, verifier=program, serial=serial)


@dataclass(frozen=True)
class VerifyOutcome:
    """Exact outcome distribution of one kickback test.

    ``accepted`` and ``rejected`` are the post-test states conditioned
    on the ancilla outcome; either is None when its branch has no weight.
    """

    accept_probability: float
    accepted: Optional[QuantumState]
    rejected: Optional[QuantumState]

    def sample(self, rng: np.random.Generator) -> "tuple[int, QuantumState]":
        bit = int(rng.random() < self.accept_probability)
        post = self.accepted if bit else self.rejected
        if post is None:
            raise MoneyError("sampled a branch with no weight")
        return bit, post


def _controlled_program_gates(program: ObfuscatedProgram) -> List[Gate]:
    if program.form != CLASSICAL_FORM:
        raise MoneyError(
            "only circuit-description verifiers can be applied conditionally"
        )
    circuit = parse_circuit(program.payload)
    gates = []
    for gate in circuit.gates:
        if not gate.is_unitary:
            raise MoneyError(f"verifier contains a non-unitary {gate.kind} step")
        gates.append(gate.shifted(1).with_controls((0,), (1,)))
    return gates


def verify(program: ObfuscatedProgram, candidate: QuantumState) -> VerifyOutcome:
    """Kickback test of a candidate note against a published verifier.

    Ancilla to |+>, verifier conditioned on it, interfere, read the
    ancilla: accept probability is the squared overlap with the hidden
    state, and the accept branch holds the hidden state itself, which
    is why verification can be repeated.
    """
    if candidate.num_qubits != program.arity:
        raise MoneyError(
            f"candidate on {candidate.num_qubits} qubits does not match a "
            f"verifier of arity {program.arity}"
        )
    program.consume_use()
    gates = [named("h", 0), *_controlled_program_gates(program), named("h", 0)]
    joint = basis_state(1, "0").tensor(candidate)
    out = run_circuit(
        QuantumCircuit(arity=1 + program.arity, gates=tuple(gates)), joint
    )
    data = range(1, 1 + program.arity)
    p1, post1 = project_qubit(out, 0, 1)
    p0, post0 = project_qubit(out, 0, 0)
    return VerifyOutcome(
        accept_probability=p1,
        accepted=None if post1 is None else partial_trace(post1, data),
        rejected=None if post0 is None else partial_trace(post0, data),
    )


class Bank:
    """Issued-serial registry; authentication is membership, nothing more."""

    def __init__(self) -> None:
        self._issued: set = set()
        self._lock = threading.Lock()

    def issue(
        self,
        n: int,
        obf: Optional[Obfuscator] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> Bill:
        bill = mint(n, obf, rng)
        with self._lock:
            if bill.serial in self._issued:
                raise MoneyError(f"serial collision on {bill.serial!r}")
            self._issued.add(bill.serial)
        return bill

    def recognizes(self, serial: str) -> bool:
        with self._lock:
            return serial in self._issued

    @property
    def issued_count(self) -> int:
        with self._lock:
            return len(self._issued)


CloneStrategy = Callable[[CountingOracle, int, np.random.Generator], QuantumState]


@dataclass(frozen=True)
class CounterfeitResult:
    n: int
    budget: int
    queries_used: int
    clone_fidelity: float


def counterfeit_experiment(
    bill: Bill, q: int, strategy: CloneStrategy, rng: np.random.Generator
) -> CounterfeitResult:
    """Score a cloning strategy that sees the verifier only as a counted
    black box.  The hidden note is used solely to grade the clone."""
    if q < 0:
        raise MoneyError("query budget cannot be negative")
    oracle = CountingOracle(parse_circuit(bill.verifier.payload))
    clone = strategy(oracle, q, rng)
    used = oracle.query_count
    if used > q:
        raise MoneyError(f"strategy spent {used} queries against a budget of {q}")
    if clone.num_qubits != bill.note.num_qubits:
        raise MoneyError("clone has the wrong number of qubits")
    return CounterfeitResult(
        n=bill.note.num_qubits,
        budget=q,
        queries_used=used,
        clone_fidelity=fidelity(clone, bill.note),
    )


def haar_guess_strategy(
    oracle: CountingOracle, q: int, rng: np.random.Generator
) -> QuantumState:
    """Zero-query baseline: output a fresh Haar-random state."""
    return sample_random_state(oracle.arity, rng)


def reflection_probe_strategy(
    oracle: CountingOracle, q: int, rng: np.random.Generator
) -> QuantumState:
    """Probe basis states through the reflection and chase deviations.

    A reflection moves a probe |x> only through the hidden state's
    component on x, so a probe that measures to anything other than x
    is evidence; the deviated outcome itself is distributed by the
    hidden state's basis weights.  Output the most frequent deviated
    outcome, or a random state when every probe came back unchanged.
    Spends every query in the budget; covers each basis value once
    before repeating.
    """
    n = oracle.arity
    order = [int(v) for v in rng.permutation(2**n)]
    seen: "dict[str, int]" = {}
    for i in range(q):
        x = order[i % len(order)]
        probe = basis_state(n, x)
        y = sample_basis(oracle.apply(probe), rng)
        if int(y, 2) != x:
            seen[y] = seen.get(y, 0) + 1
    if seen:
        best = max(seen, key=lambda k: (seen[k], k))
        return basis_state(n, best)
    return sample_random_state(n, rng)


def given_state_strategy(psi: QuantumState) -> CloneStrategy:
    """Harness sanity check: a strategy handed the note out-of-band."""

    def strategy(
        oracle: CountingOracle, q: int, rng: np.random.Generator
    ) -> QuantumState:
        return psi

    return strategy
