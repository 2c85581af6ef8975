"""Witness-gated release of a quantum payload.

The encryptor wraps a payload state in a program that first runs a
verifier circuit on whatever witness the decryptor supplies, then hands
over the payload exactly on the accept branch and an all-zeros register
otherwise.  Against a verifier that accepts some witness, holders of
that witness recover the payload; against a verifier that accepts
nothing, the program's output barely depends on the payload at all, and
the residual dependence is bounded by the verifier's acceptance ceiling.

The toy verifier family here tests closeness to a hidden target state:
undo the target's preparation and look for all zeros.  Accepting
instances expose the target as the canonical witness; rejecting
instances only ever rotate the accept qubit by an angle chosen so that
no witness can push the acceptance probability above 2^-n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .obfuscation.core import ObfuscatedProgram, Obfuscator, interpret
from .simulator import (
    QuantumCircuit,
    QuantumState,
    alloc,
    custom,
    named,
    random_unitary,
    run_circuit,
)

WE_PAYLOAD_CEILING = 4

YES_KIND = "yes"
NO_KIND = "no"


class WitnessEncryptionError(Exception):
    pass


@dataclass(frozen=True)
class ToyVerifier:
    """A witness checker: circuit from witness register to one accept qubit.

    ``witness`` carries the canonical accepting state for ``yes``
    instances; it exists for tests and honest decryptors, not for the
    program the encryptor publishes.
    """

    instance_id: str
    circuit: QuantumCircuit
    kind: str
    witness: Optional[QuantumState] = None

    def __post_init__(self) -> None:
        if self.kind not in (YES_KIND, NO_KIND):
            raise WitnessEncryptionError(f"unknown verifier kind {self.kind!r}")
        if self.circuit.output_spec is None or len(self.circuit.output_spec) != 1:
            raise WitnessEncryptionError("verifier circuit must single out an accept qubit")
        if self.kind == YES_KIND and self.witness is None:
            raise WitnessEncryptionError("accepting instances must carry their witness")

    @property
    def witness_qubits(self) -> int:
        return self.circuit.arity

    @property
    def accept_qubit(self) -> int:
        return self.circuit.output_spec[0]


def acceptance_probability(verifier: ToyVerifier, witness: QuantumState) -> float:
    if witness.num_qubits != verifier.witness_qubits:
        raise WitnessEncryptionError(
            f"witness on {witness.num_qubits} qubits, verifier expects "
            f"{verifier.witness_qubits}"
        )
    out = run_circuit(verifier.circuit, witness)
    return float(out.probabilities()[1])


def _inverse_prep_gates(target_unitary: np.ndarray, n: int):
    body = custom(target_unitary.conj().T, tuple(range(n)))
    return [body, alloc(n)]


def yes_instance(
    n: int, rng: np.random.Generator, instance_id: Optional[str] = None
) -> ToyVerifier:
    """Verifier accepting states near a hidden Haar-random target.

    Acceptance probability of a witness equals its squared overlap with
    the target, so the canonical witness is accepted with certainty.
    """
    if n < 1:
        raise WitnessEncryptionError("need at least one witness qubit")
    u = random_unitary(2**n, rng)
    target = QuantumState.from_vector(u[:, 0].copy())
    gates = _inverse_prep_gates(u, n)
    gates.append(named("x", n).with_controls(tuple(range(n)), (0,) * n))
    circuit = QuantumCircuit(arity=n, gates=tuple(gates), output_spec=(n,))
    if instance_id is None:
        instance_id = "yes-" + bytes(rng.integers(0, 256, size=4, dtype=np.uint8)).hex()
    return ToyVerifier(instance_id=instance_id, circuit=circuit, kind=YES_KIND, witness=target)


def no_instance(
    n: int, rng: np.random.Generator, instance_id: Optional[str] = None
) -> ToyVerifier:
    """Verifier that accepts nothing beyond its rounding allowance.

    The accept qubit is only ever rotated by the fixed angle with
    sin^2(theta/2) = 2^-n, and only on the component matching the
    hidden pattern, so the acceptance operator has norm exactly 2^-n
    and no witness state beats that.
    """
    if n < 1:
        raise WitnessEncryptionError("need at least one witness qubit")
    u = random_unitary(2**n, rng)
    theta = 2.0 * math.asin(2.0 ** (-n / 2.0))
    half = theta / 2.0
    tilt = np.array(
        [[math.cos(half), -math.sin(half)], [math.sin(half), math.cos(half)]],
        dtype=np.complex128,
    )
    gates = _inverse_prep_gates(u, n)
    gates.append(custom(tilt, (n,)).with_controls(tuple(range(n)), (0,) * n))
    circuit = QuantumCircuit(arity=n, gates=tuple(gates), output_spec=(n,))
    if instance_id is None:
        instance_id = "no-" + bytes(rng.integers(0, 256, size=4, dtype=np.uint8)).hex()
    return ToyVerifier(instance_id=instance_id, circuit=circuit, kind=NO_KIND)


def _prep_unitary(vec: np.ndarray) -> np.ndarray:
    """A unitary sending |0...0> to the given unit vector, exactly."""
    dim = vec.size
    e0 = np.zeros(dim, dtype=np.complex128)
    e0[0] = 1.0
    head = vec[0]
    phase = head / abs(head) if abs(head) > 1e-12 else 1.0
    aligned = vec * np.conj(phase)
    w = e0 - aligned
    norm2 = float(np.vdot(w, w).real)
    if norm2 < 1e-24:
        return np.eye(dim, dtype=np.complex128) * phase
    house = np.eye(dim, dtype=np.complex128) - (2.0 / norm2) * np.outer(w, w.conj())
    return house * phase


def release_circuit(verifier: ToyVerifier, payload: QuantumState) -> QuantumCircuit:
    """The program body: verify, then swap the payload into the output
    register on accept.  The unswapped fresh register is the reject
    branch's all-zeros output."""
    if not payload.pure:
        raise WitnessEncryptionError(
            "payloads must be pure at desk scale; purification would double the register"
        )
    p = payload.num_qubits
    if p > WE_PAYLOAD_CEILING:
        raise WitnessEncryptionError(
            f"payload of {p} qubits exceeds the ceiling of {WE_PAYLOAD_CEILING}"
        )
    nw = verifier.witness_qubits
    accept = verifier.accept_qubit
    prep_start = max(accept + 1, nw + 1)
    blank_start = prep_start + p
    gates = list(verifier.circuit.gates)
    for i in range(p):
        gates.append(alloc(prep_start + i))
    gates.append(
        custom(_prep_unitary(payload.vector()), tuple(range(prep_start, prep_start + p)))
    )
    for i in range(p):
        gates.append(alloc(blank_start + i))
    for i in range(p):
        gates.append(
            named("swap", prep_start + i, blank_start + i).with_controls((accept,), (1,))
        )
    out = tuple(range(blank_start, blank_start + p))
    return QuantumCircuit(arity=nw, gates=tuple(gates), output_spec=out)


def we_encrypt(
    verifier: ToyVerifier, payload: QuantumState, obf: Obfuscator
) -> ObfuscatedProgram:
    return obf.obfuscate(release_circuit(verifier, payload))


def we_decrypt(ciphertext: ObfuscatedProgram, witness: QuantumState) -> QuantumState:
    """Run the release program on a witness; the interpreter enforces
    arity and any finite use counter."""
    return interpret(ciphertext, witness)
