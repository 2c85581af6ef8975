"""Witness-gated payload release and the toy verifier family."""

import numpy as np
import pytest

from qcryptlab.obfuscation import PlainObfuscator
from qcryptlab.simulator import (
    QuantumCircuit,
    QuantumState,
    basis_state,
    fidelity,
    maximally_mixed_state,
    named,
    sample_random_state,
    trace_distance,
    zero_state,
)
from qcryptlab.witness import (
    NO_KIND,
    ToyVerifier,
    WE_PAYLOAD_CEILING,
    WitnessEncryptionError,
    YES_KIND,
    acceptance_probability,
    no_instance,
    release_circuit,
    we_decrypt,
    we_encrypt,
    yes_instance,
)


def test_verifier_construction_rules():
    rng = np.random.default_rng(1)
    good = yes_instance(2, rng)
    assert good.kind == YES_KIND
    assert good.witness_qubits == 2
    with pytest.raises(WitnessEncryptionError):
        ToyVerifier(instance_id="v", circuit=good.circuit, kind="maybe")
    with pytest.raises(WitnessEncryptionError):
        ToyVerifier(instance_id="v", circuit=good.circuit, kind=YES_KIND)  # no witness
    plain = QuantumCircuit(arity=2, gates=(named("x", 0),))
    with pytest.raises(WitnessEncryptionError):
        ToyVerifier(instance_id="v", circuit=plain, kind=NO_KIND)


def test_yes_instance_canonical_witness_is_certain():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3):
        v = yes_instance(n, rng)
        assert acceptance_probability(v, v.witness) == pytest.approx(1.0, abs=1e-10)


def test_yes_instance_acceptance_is_overlap_with_the_target():
    rng = np.random.default_rng(5)
    v = yes_instance(2, rng)
    for _ in range(4):
        probe = sample_random_state(2, rng)
        assert acceptance_probability(v, probe) == pytest.approx(
            fidelity(probe, v.witness), abs=1e-10
        )


def test_no_instance_acceptance_is_capped():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3):
        v = no_instance(n, rng)
        assert v.witness is None
        cap = 2.0**-n
        assert acceptance_probability(v, zero_state(n)) <= cap + 1e-10
        for _ in range(5):
            probe = sample_random_state(n, rng)
            assert acceptance_probability(v, probe) <= cap + 1e-10


def test_acceptance_checks_witness_size():
    v = yes_instance(2, np.random.default_rng(9))
    with pytest.raises(WitnessEncryptionError):
        acceptance_probability(v, zero_state(3))


def test_release_circuit_hands_over_the_payload_on_accept():
    rng = np.random.default_rng(11)
    v = yes_instance(2, rng)
    payload = sample_random_state(2, rng)
    ct = we_encrypt(v, payload, PlainObfuscator())
    out = we_decrypt(ct, v.witness)
    assert fidelity(out, payload) == pytest.approx(1.0, abs=1e-9)


def test_release_circuit_withholds_from_a_failing_witness():
    rng = np.random.default_rng(13)
    v = yes_instance(2, rng)
    payload = sample_random_state(2, rng)
    ct = we_encrypt(v, payload, PlainObfuscator())
    # an orthogonal witness drives the accept amplitude to zero, so the
    # output register stays blank
    vec = v.witness.vector()
    k = int(np.argmin(np.abs(vec)))
    ortho = np.zeros(vec.size, dtype=np.complex128)
    ortho[k] = 1.0
    ortho -= vec * np.conj(vec[k])
    ortho /= np.linalg.norm(ortho)
    out = we_decrypt(ct, QuantumState.from_vector(ortho))
    assert trace_distance(out, zero_state(2)) < 1e-9


def test_no_instance_release_barely_depends_on_the_payload():
    rng = np.random.default_rng(17)
    v = no_instance(2, rng)
    pa = basis_state(1, "0")
    pb = basis_state(1, "1")
    ca = we_encrypt(v, pa, PlainObfuscator())
    cb = we_encrypt(v, pb, PlainObfuscator())
    witness = sample_random_state(2, rng)
    outs = [we_decrypt(ca, witness), we_decrypt(cb, witness)]
    assert trace_distance(outs[0], outs[1]) <= 2.0**-2 + 1e-6


def test_release_circuit_payload_rules():
    rng = np.random.default_rng(19)
    v = yes_instance(2, rng)
    with pytest.raises(WitnessEncryptionError):
        release_circuit(v, maximally_mixed_state(1))
    with pytest.raises(WitnessEncryptionError):
        release_circuit(v, zero_state(WE_PAYLOAD_CEILING + 1))


def test_release_circuit_shape():
    rng = np.random.default_rng(23)
    v = yes_instance(2, rng)
    circuit = release_circuit(v, basis_state(2, "10"))
    assert circuit.arity == 2  # witness register only; the rest is allocated
    assert len(circuit.output_spec) == 2
