"""Symmetric quantum encryption built on the Pauli one-time pad.

All schemes here share one mechanism: conjugate the payload by a Pauli
string that the key (and a per-message tag) determines.  The scheme
variants differ in where that Pauli comes from:

* ``prf_scheme``: Pauli bits are a PRF of a random tag.  The workhorse.
* ``broken_scheme``: one fixed Pauli per key, tag ignored.  Exists to be
  defeated in the security games.
* ``ideal_scheme``: a lazily sampled true-random table replaces the PRF.
  The information-theoretic reference point for game calibration.
* ``obf_cpa_scheme``: ships the decryption Pauli inside an obfuscated
  key-conditioned circuit attached to each ciphertext.
* ``pk_scheme``: publishes an obfuscated encryption circuit as the
  public key.
* ``hom_eval_scheme``: adds an obfuscated decrypt-apply-reencrypt
  circuit so ciphertexts can be computed on gate by gate.

Keys, tags, and randomness are classical bitstrings; the tag travels
with the ciphertext in the clear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..bitstrings import check_bits, int_to_bits, random_bits
from ..obfuscation.core import ObfuscatedProgram, interpret
from ..pseudorandom import PrfKey, ggm_eval
from ..simulator import (
    Gate,
    PauliString,
    QuantumCircuit,
    QuantumState,
    basis_state,
    compact_state,
    named,
    partial_trace,
    pauli_apply,
    pauli_gate_list,
)


class EncryptionError(Exception):
    pass


@dataclass(frozen=True)
class Ciphertext:
    """Classical tag plus quantum payload.

    ``program`` carries a per-message obfuscated decryption circuit for
    the schemes that ship one; it is None everywhere else.
    """

    tag: str
    payload: QuantumState
    program: Optional[ObfuscatedProgram] = None


@dataclass(frozen=True)
class SymScheme:
    """A symmetric scheme as its three algorithms plus size declarations.

    ``enc`` takes explicit randomness (``randomness_length`` bits) so
    that callers control sampling; the security games always sample it
    on the challenger side.  ``enc_circuit``, when present, hard-wires a
    key into a unitary with registers (tag, payload) that performs the
    same encryption coherently; ``tag_pauli`` exposes the key/tag to
    Pauli-bit map that enc_circuit and the homomorphic evaluator build
    on.
    """

    name: str
    plaintext_qubits: int
    key_length: int
    tag_length: int
    randomness_length: int
    keygen: Callable[[np.random.Generator], str]
    enc: Callable[[str, QuantumState, str], Ciphertext]
    dec: Callable[[str, Ciphertext], QuantumState]
    enc_circuit: Optional[Callable[[str], QuantumCircuit]] = None
    tag_pauli: Optional[Callable[[str, str], str]] = None


def qotp_encrypt(r: PauliString, rho: QuantumState) -> QuantumState:
    if r.num_qubits != rho.num_qubits:
        raise EncryptionError(
            f"pad covers {r.num_qubits} qubits, state has {rho.num_qubits}"
        )
    return pauli_apply(r, rho)


def _check_plaintext(m: int, rho: QuantumState) -> None:
    if rho.num_qubits != m:
        raise EncryptionError(f"plaintext has {rho.num_qubits} qubits, scheme wants {m}")


def _check_payload(m: int, ct: Ciphertext) -> None:
    if ct.payload.num_qubits != m:
        raise EncryptionError(
            f"ciphertext payload has {ct.payload.num_qubits} qubits, scheme wants {m}"
        )


def _pauli_scheme(
    name: str,
    n: int,
    m: int,
    pauli_for: Callable[[str, str], str],
    key_length: Optional[int] = None,
) -> SymScheme:
    """Assemble the tag-and-pad scheme shape shared by three variants."""
    k = n if key_length is None else key_length

    def keygen(rng: np.random.Generator) -> str:
        return random_bits(k, rng)

    def enc(key: str, rho: QuantumState, randomness: str) -> Ciphertext:
        check_bits(key, k)
        tag = check_bits(randomness, n)
        _check_plaintext(m, rho)
        pad = PauliString(pauli_for(key, tag))
        return Ciphertext(tag=tag, payload=pauli_apply(pad, rho))

    def dec(key: str, ct: Ciphertext) -> QuantumState:
        check_bits(key, k)
        _check_payload(m, ct)
        pad = PauliString(pauli_for(key, ct.tag))
        return pauli_apply(pad, ct.payload, inverse=True)

    def enc_circuit(key: str) -> QuantumCircuit:
        check_bits(key, k)
        gates: List[Gate] = []
        for value in range(2**n):
            tag = int_to_bits(value, n)
            tag_pattern = tuple(int(bit) for bit in tag)
            gates.extend(
                pauli_gate_list(
                    pauli_for(key, tag),
                    offset=n,
                    inverse=False,
                    controls=range(n),
                    pattern=tag_pattern,
                )
            )
        return QuantumCircuit(arity=n + m, gates=tuple(gates))

    return SymScheme(
        name=name,
        plaintext_qubits=m,
        key_length=k,
        tag_length=n,
        randomness_length=n,
        keygen=keygen,
        enc=enc,
        dec=dec,
        enc_circuit=enc_circuit,
        tag_pauli=pauli_for,
    )


def prf_scheme(n: int, plaintext_qubits: Optional[int] = None) -> SymScheme:
    """Tagged Pauli pad with the pad bits drawn from the GGM PRF.

    Keys are n bits, tags n bits, plaintexts default to n qubits.
    Correct for every key and tag; its security rests entirely on the
    PRF standing in for a random function.
    """
    m = n if plaintext_qubits is None else plaintext_qubits
    if m < 1 or n < 1:
        raise EncryptionError("need at least one qubit and one key bit")

    def pauli_for(key: str, tag: str) -> str:
        return ggm_eval(PrfKey(key=key, input_length=n, output_length=2 * m), tag)

    return _pauli_scheme("prf-pauli", n, m, pauli_for)


def broken_scheme(n: int, plaintext_qubits: Optional[int] = None) -> SymScheme:
    """Deliberately weak variant: the pad depends on the key alone.

    The tag is still carried but ignored, so every message under one key
    gets the same Pauli conjugation.  One reference encryption query
    then identifies any basis-state plaintext.
    """
    m = n if plaintext_qubits is None else plaintext_qubits
    if m < 1 or n < 1:
        raise EncryptionError("need at least one qubit and one key bit")

    def pauli_for(key: str, tag: str) -> str:
        return ggm_eval(PrfKey(key=key, input_length=n, output_length=2 * m), "0" * n)

    return _pauli_scheme("broken-fixed-pauli", n, m, pauli_for)


IDEAL_KEY_LENGTH = 64


def ideal_scheme(n: int, seed: int = 0, plaintext_qubits: Optional[int] = None) -> SymScheme:
    """The PRF replaced by a lazily filled table of true randomness.

    Each (key, tag) pair gets an independently uniform Pauli, sampled
    once from an instance-owned generator and cached, so repeated
    encryptions under one key see one consistent random function.  Keys
    are 64 bits regardless of n: independently drawn keys then never
    collide, so every fresh key indexes a fresh function and a long run
    of single-encryption trials behaves as a true one-time pad.  (With
    n-bit keys the handful of cached functions would be revisited and
    their sampling bias would accumulate into a measurable signal.)
    Instances are stateful: construct one per experiment, not one per
    process.
    """
    m = n if plaintext_qubits is None else plaintext_qubits
    if m < 1 or n < 1:
        raise EncryptionError("need at least one qubit and one key bit")
    table: Dict[Tuple[str, str], str] = {}
    fill_rng = np.random.default_rng(seed)

    def pauli_for(key: str, tag: str) -> str:
        got = table.get((key, tag))
        if got is None:
            got = random_bits(2 * m, fill_rng)
            table[(key, tag)] = got
        return got

    return _pauli_scheme("ideal-otp", n, m, pauli_for, key_length=IDEAL_KEY_LENGTH)


def conditional_pad_circuit(key: str, pauli_bits: str) -> QuantumCircuit:
    """Unitary on (x, y): apply the inverse pad to y exactly when x = key.

    The gate list leaks both the key (as the control pattern) and the
    pad, which is the whole point of running it through an obfuscator.
    """
    check_bits(key)
    n = len(key)
    ps = PauliString(pauli_bits)
    pattern = tuple(int(bit) for bit in key)
    gates = pauli_gate_list(
        pauli_bits, offset=n, inverse=True, controls=range(n), pattern=pattern
    )
    return QuantumCircuit(arity=n + ps.num_qubits, gates=tuple(gates))


def obf_cpa_scheme(obf, n: int, plaintext_qubits: Optional[int] = None) -> SymScheme:
    """Pauli pad whose decryption circuit rides along, obfuscated.

    Enc pads the payload with a uniformly random Pauli (the scheme's
    randomness, 2m bits) and attaches an obfuscation of the circuit
    that undoes the pad when shown the key register.  Dec runs the
    attached program on |key> tensor payload.  There is no tag.
    """
    m = n if plaintext_qubits is None else plaintext_qubits
    if m < 1 or n < 1:
        raise EncryptionError("need at least one qubit and one key bit")

    def keygen(rng: np.random.Generator) -> str:
        return random_bits(n, rng)

    def enc(key: str, rho: QuantumState, randomness: str) -> Ciphertext:
        check_bits(key, n)
        pad_bits = check_bits(randomness, 2 * m)
        _check_plaintext(m, rho)
        payload = pauli_apply(PauliString(pad_bits), rho)
        program = obf.obfuscate(conditional_pad_circuit(key, pad_bits))
        return Ciphertext(tag="", payload=payload, program=program)

    def dec(key: str, ct: Ciphertext) -> QuantumState:
        check_bits(key, n)
        _check_payload(m, ct)
        if ct.program is None:
            raise EncryptionError("ciphertext carries no decryption program")
        joint = basis_state(n, key).tensor(ct.payload)
        out = interpret(ct.program, joint)
        return compact_state(partial_trace(out, range(n, n + m)))

    return SymScheme(
        name="obf-conditional-pad",
        plaintext_qubits=m,
        key_length=n,
        tag_length=0,
        randomness_length=2 * m,
        keygen=keygen,
        enc=enc,
        dec=dec,
    )


@dataclass(frozen=True)
class PkScheme:
    """Public-key wrapper: the public key is a program, not a bitstring."""

    name: str
    plaintext_qubits: int
    tag_length: int
    randomness_length: int
    base: SymScheme
    keygen: Callable[[np.random.Generator], Tuple[str, ObfuscatedProgram]]
    enc: Callable[[ObfuscatedProgram, QuantumState, str], Ciphertext]
    dec: Callable[[str, Ciphertext], QuantumState]


def pk_scheme(obf, base: SymScheme) -> PkScheme:
    """Publish an obfuscation of the base scheme's encryption circuit.

    Anyone holding the program can encrypt by running it on |r> tensor
    plaintext; decryption still needs the base secret key.  Correctness
    is inherited from the base scheme; secrecy of the secret key is
    exactly as good as the obfuscator, so with the plain obfuscator the
    public key is a readable transcript of every pad.
    """
    if base.enc_circuit is None:
        raise EncryptionError(f"scheme {base.name} has no encryption circuit form")
    t = base.tag_length
    m = base.plaintext_qubits

    def keygen(rng: np.random.Generator) -> Tuple[str, ObfuscatedProgram]:
        sk = base.keygen(rng)
        return sk, obf.obfuscate(base.enc_circuit(sk))

    def enc(pk: ObfuscatedProgram, rho: QuantumState, randomness: str) -> Ciphertext:
        tag = check_bits(randomness, t)
        _check_plaintext(m, rho)
        joint = basis_state(t, tag).tensor(rho)
        out = interpret(pk, joint)
        payload = compact_state(partial_trace(out, range(t, t + m)))
        return Ciphertext(tag=tag, payload=payload)

    def dec(sk: str, ct: Ciphertext) -> QuantumState:
        return base.dec(sk, ct)

    return PkScheme(
        name=f"pk-{base.name}",
        plaintext_qubits=m,
        tag_length=t,
        randomness_length=t,
        base=base,
        keygen=keygen,
        enc=enc,
        dec=dec,
    )


# ---------------------------------------------------------------------------
# Gate-by-gate homomorphic evaluation

UNIVERSAL_CATALOG: Tuple[str, ...] = ("id", "x", "z", "h", "s", "cx")

_GATE_FIELD = 3


def _target_field(m: int) -> int:
    return max(1, (m - 1).bit_length())


def encode_gate(gate_name: str, target: int, m: int) -> str:
    """Describe one catalog gate as the selector bits the evaluator reads.

    cx acts on (target, target+1 mod m); everything else on target.
    """
    if gate_name not in UNIVERSAL_CATALOG:
        raise EncryptionError(f"gate {gate_name!r} is not in the catalog")
    if not 0 <= target < m:
        raise EncryptionError(f"target {target} outside a {m}-qubit payload")
    if gate_name == "cx" and m < 2:
        raise EncryptionError("cx needs a payload of at least two qubits")
    index = UNIVERSAL_CATALOG.index(gate_name)
    return int_to_bits(index, _GATE_FIELD) + int_to_bits(target, _target_field(m))


def gate_description_length(m: int) -> int:
    return _GATE_FIELD + _target_field(m)


def universal_gate_dispatch(desc_offset: int, payload_offset: int, m: int) -> List[Gate]:
    """Selector-controlled catalog application on an m-qubit payload.

    For every (gate, target) pair, attaches the gate controlled on the
    description register holding that pair's encoding.  Unassigned
    selector values act as the identity.
    """
    tfield = _target_field(m)
    desc_qubits = tuple(range(desc_offset, desc_offset + _GATE_FIELD + tfield))
    gates: List[Gate] = []
    for index, name in enumerate(UNIVERSAL_CATALOG):
        if name == "id":
            continue
        for target in range(m):
            if name == "cx" and m < 2:
                continue
            pattern = tuple(
                int(bit) for bit in int_to_bits(index, _GATE_FIELD) + int_to_bits(target, tfield)
            )
            if name == "cx":
                partner = (target + 1) % m
                g = named("x", payload_offset + partner).with_controls(
                    desc_qubits + (payload_offset + target,), pattern + (1,)
                )
            else:
                g = named(name, payload_offset + target).with_controls(desc_qubits, pattern)
            gates.append(g)
    return gates


@dataclass(frozen=True)
class HomKeys:
    sk: str
    pk: ObfuscatedProgram
    eval_key: ObfuscatedProgram


@dataclass(frozen=True)
class HomScheme:
    """Public-key scheme extended with a gate-evaluation key."""

    name: str
    plaintext_qubits: int
    tag_length: int
    randomness_length: int
    public: PkScheme
    keygen: Callable[[np.random.Generator], HomKeys]
    enc: Callable[[ObfuscatedProgram, QuantumState, str], Ciphertext]
    dec: Callable[[str, Ciphertext], QuantumState]
    eval_gate: Callable[[ObfuscatedProgram, Ciphertext, str, int, str], Ciphertext]


def eval_circuit(base: SymScheme, sk: str) -> QuantumCircuit:
    """Decrypt, apply the selected catalog gate, re-encrypt: one unitary.

    Registers in order: incoming tag (t qubits), payload (m), gate
    description, outgoing tag (t).  Both tags are read as basis values
    by pattern-controlled pad gates; the evaluator supplies the
    outgoing tag as fresh randomness.
    """
    if base.tag_pauli is None:
        raise EncryptionError(f"scheme {base.name} does not expose its pad map")
    t = base.tag_length
    m = base.plaintext_qubits
    g = gate_description_length(m)
    desc_offset = t + m
    out_offset = t + m + g
    gates: List[Gate] = []
    for value in range(2**t):
        tag = int_to_bits(value, t)
        pattern = tuple(int(bit) for bit in tag)
        gates.extend(
            pauli_gate_list(
                base.tag_pauli(sk, tag),
                offset=t,
                inverse=True,
                controls=range(t),
                pattern=pattern,
            )
        )
    gates.extend(universal_gate_dispatch(desc_offset, t, m))
    for value in range(2**t):
        tag = int_to_bits(value, t)
        pattern = tuple(int(bit) for bit in tag)
        gates.extend(
            pauli_gate_list(
                base.tag_pauli(sk, tag),
                offset=t,
                inverse=False,
                controls=range(out_offset, out_offset + t),
                pattern=pattern,
            )
        )
    return QuantumCircuit(arity=t + m + g + t, gates=tuple(gates))


def hom_eval_scheme(obf, public: PkScheme) -> HomScheme:
    """Extend a public-key pad scheme with homomorphic gate application.

    The evaluation key is an obfuscation of the decrypt-apply-reencrypt
    circuit for the base secret key.  eval_gate(k_eval, ct, gate,
    target, fresh_tag) produces a ciphertext of the gate applied to the
    plaintext, carrying the fresh tag.
    """
    base = public.base
    t = base.tag_length
    m = base.plaintext_qubits
    g = gate_description_length(m)

    def keygen(rng: np.random.Generator) -> HomKeys:
        sk, pk = public.keygen(rng)
        return HomKeys(sk=sk, pk=pk, eval_key=obf.obfuscate(eval_circuit(base, sk)))

    def eval_gate(
        eval_key: ObfuscatedProgram,
        ct: Ciphertext,
        gate_name: str,
        target: int,
        randomness: str,
    ) -> Ciphertext:
        _check_payload(m, ct)
        fresh = check_bits(randomness, t)
        desc = encode_gate(gate_name, target, m)
        joint = (
            basis_state(t, ct.tag)
            .tensor(ct.payload)
            .tensor(basis_state(g, desc))
            .tensor(basis_state(t, fresh))
        )
        out = interpret(eval_key, joint)
        payload = compact_state(partial_trace(out, range(t, t + m)))
        return Ciphertext(tag=fresh, payload=payload)

    return HomScheme(
        name=f"hom-{public.name}",
        plaintext_qubits=m,
        tag_length=t,
        randomness_length=t,
        public=public,
        keygen=keygen,
        enc=public.enc,
        dec=public.dec,
        eval_gate=eval_gate,
    )
