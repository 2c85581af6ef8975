"""Distance measures for states, unitaries, and channels.

``trace_distance`` is the usual half trace norm, in [0, 1].

``phase_invariant_distance`` compares two unitary circuits modulo global
phase: min over alpha of the operator norm of U - e^{i alpha} V.  Writing
W = V^dag U with eigenphases theta_j, this equals the minimax distance of
a point on the circle to the eigenphases, solved exactly by the smallest
enclosing arc.

``channel_distance_estimate`` deliberately avoids the diamond-norm SDP.
It reports a certified lower bound (the trace distance of the normalized
Choi states, obtained by running each circuit on half of a maximally
entangled pair) together with a probe-maximization estimate over all
basis-state inputs, the entangled input, and k random pure probes carrying
a reference register.  Both numbers live in [0, 1]; the unnormalized
diamond norm is up to twice the reported values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .circuit import QuantumCircuit
from .engine import run_circuit
from .random import sample_random_state
from .state import MIXED_QUBIT_LIMIT, QuantumState, SimulatorError
from . import engine


def trace_distance(a: QuantumState, b: QuantumState) -> float:
    """Half the trace norm of the difference of the two density operators."""
    if a.num_qubits != b.num_qubits:
        raise SimulatorError("trace distance needs states on equal qubit counts")
    diff = a.density() - b.density()
    eigs = np.linalg.eigvalsh(diff)
    return float(0.5 * np.sum(np.abs(eigs)))


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """Uhlmann fidelity |<a|b>|^2 style (squared-overlap convention)."""
    if a.num_qubits != b.num_qubits:
        raise SimulatorError("fidelity needs states on equal qubit counts")
    if a.pure and b.pure:
        return float(np.abs(np.vdot(a.data, b.data)) ** 2)
    if a.pure:
        return float(np.real(np.vdot(a.data, b.density() @ a.data)))
    if b.pure:
        return float(np.real(np.vdot(b.data, a.density() @ b.data)))
    sqrt_a = scipy.linalg.sqrtm(a.density())
    inner = scipy.linalg.sqrtm(sqrt_a @ b.density() @ sqrt_a)
    return float(np.real(np.trace(inner)) ** 2)


def phase_invariant_distance(u: QuantumCircuit, v: QuantumCircuit) -> float:
    """min_alpha || U - e^{i alpha} V || in operator norm, for unitary circuits."""
    if u.arity != v.arity:
        raise SimulatorError("phase-invariant distance needs equal arities")
    if not (u.is_unitary and v.is_unitary):
        raise SimulatorError("phase-invariant distance is defined for unitary circuits")
    w = engine.circuit_unitary(v).conj().T @ engine.circuit_unitary(u)
    phases = np.sort(np.angle(np.linalg.eigvals(w)))
    if phases.size == 1:
        return 0.0
    gaps = np.diff(phases)
    wrap_gap = 2 * np.pi - (phases[-1] - phases[0])
    largest_gap = max(float(gaps.max()), float(wrap_gap))
    arc = 2 * np.pi - largest_gap
    return float(2.0 * np.sin(arc / 4.0))


def _with_reference(circuit: QuantumCircuit) -> QuantumCircuit:
    """The circuit acting on the first half of a doubled register."""
    n = circuit.arity
    emb = circuit.embedded(2 * n, offset=0)
    refs = tuple(range(n, 2 * n))
    spec = tuple(q for q in emb.output_qubits if q not in refs) + refs
    return QuantumCircuit(arity=2 * n, gates=emb.gates, output_spec=spec)


def _entangled_probe(n: int) -> QuantumState:
    dim = 2**n
    vec = np.zeros(dim * dim, dtype=np.complex128)
    for x in range(dim):
        vec[x * dim + x] = 1.0
    return QuantumState.from_vector(vec / np.sqrt(dim))


@dataclass(frozen=True)
class ChannelDistanceResult:
    lower: float
    estimate: float

    def __iter__(self):
        yield self.lower
        yield self.estimate


def channel_distance_estimate(
    c: QuantumCircuit,
    d: QuantumCircuit,
    num_random_probes: int = 8,
    rng: Optional[np.random.Generator] = None,
) -> ChannelDistanceResult:
    """Probe-based channel distance: (certified lower bound, best estimate).

    Not a diamond-norm solver.  The lower bound can be loose for channels
    that only separate on adversarial inputs; the estimate is a maximum of
    trace distances over the probe family, so it is itself a lower bound
    on the optimal input distinguishability and never exceeds 1.
    """
    if c.arity != d.arity:
        raise SimulatorError("channel distance needs equal arities")
    if len(c.output_qubits) != len(d.output_qubits):
        raise SimulatorError("channel distance needs equal output arities")
    n = c.arity
    if 2 * n > MIXED_QUBIT_LIMIT:
        raise SimulatorError(
            f"channel distance on arity {n} needs {2 * n} mixed qubits, "
            f"above the ceiling of {MIXED_QUBIT_LIMIT}"
        )
    if rng is None:
        rng = np.random.default_rng(0)
    c_ref = _with_reference(c)
    d_ref = _with_reference(d)
    omega = _entangled_probe(n)
    choi_c = run_circuit(c_ref, omega.to_mixed())
    choi_d = run_circuit(d_ref, omega.to_mixed())
    lower = trace_distance(choi_c, choi_d)

    best = lower
    for x in range(2**n):
        probe = QuantumState.from_vector(_one_hot(2**n, x))
        td = trace_distance(run_circuit(c, probe.to_mixed()), run_circuit(d, probe.to_mixed()))
        best = max(best, td)
    for _ in range(num_random_probes):
        probe = sample_random_state(2 * n, rng).to_mixed()
        td = trace_distance(run_circuit(c_ref, probe), run_circuit(d_ref, probe))
        best = max(best, td)
    return ChannelDistanceResult(lower=lower, estimate=best)


def _one_hot(dim: int, index: int) -> np.ndarray:
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index] = 1.0
    return vec
