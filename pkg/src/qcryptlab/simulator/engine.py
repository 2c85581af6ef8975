"""Execution engine for circuits on dense states.

Unitaries are applied by reshaping the state into a rank-n tensor and
acting on the target axes; control patterns select a subtensor, so a
controlled gate never materializes its full matrix.  Measurements branch
deterministically in mixed mode (the post-measurement ensemble as a
density operator) and sample in pure mode, which therefore needs an rng.
Discards apply a partial trace and renumber the remaining qubits, which
silently converts a pure run into a mixed one.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .circuit import QuantumCircuit
from .gates import Gate
from .state import (
    MIXED_QUBIT_LIMIT,
    QuantumState,
    QubitLimitError,
    SimulatorError,
    StateValidationError,
)

Rng = np.random.Generator


class MeasurementNeedsRng(SimulatorError):
    """A pure-mode measurement was reached without a randomness source."""


def _dense_on_axes(tensor: np.ndarray, axes: Sequence[int], mat: np.ndarray) -> np.ndarray:
    """Apply ``mat`` (2^k x 2^k) along the given k axes of a tensor."""
    k = len(axes)
    src = np.moveaxis(tensor, axes, range(k))
    shape = src.shape
    flat = src.reshape(2**k, -1)
    out = mat @ flat
    return np.moveaxis(out.reshape(shape), range(k), axes)


def _tensor_apply(
    tensor: np.ndarray,
    mat: np.ndarray,
    targets: Sequence[int],
    controls: Sequence[int],
    pattern: Sequence[int],
) -> None:
    """In-place application of a (pattern-controlled) unitary on tensor axes."""
    if controls:
        idx: List[Union[slice, int]] = [slice(None)] * tensor.ndim
        for c, b in zip(controls, pattern):
            idx[c] = b
        key = tuple(idx)
        sub = tensor[key]
        ctrl_set = set(controls)
        remaining = [a for a in range(tensor.ndim) if a not in ctrl_set]
        pos = {a: i for i, a in enumerate(remaining)}
        tensor[key] = _dense_on_axes(sub, [pos[t] for t in targets], mat)
    else:
        tensor[...] = _dense_on_axes(tensor, list(targets), mat)


def _apply_unitary_vec(psi: np.ndarray, n: int, gate: Gate) -> None:
    t = psi.reshape((2,) * n)
    _tensor_apply(t, gate.payload_matrix(), gate.targets, gate.controls, gate.control_pattern)


def _apply_unitary_mat(rho: np.ndarray, n: int, gate: Gate) -> None:
    t = rho.reshape((2,) * (2 * n))
    mat = gate.payload_matrix()
    _tensor_apply(t, mat, gate.targets, gate.controls, gate.control_pattern)
    right_targets = [q + n for q in gate.targets]
    right_controls = [q + n for q in gate.controls]
    _tensor_apply(t, mat.conj(), right_targets, right_controls, gate.control_pattern)


def _dephase_mat(rho: np.ndarray, n: int, qubit: int) -> None:
    t = rho.reshape((2,) * (2 * n))
    idx: List[Union[slice, int]] = [slice(None)] * (2 * n)
    idx[qubit], idx[qubit + n] = 0, 1
    t[tuple(idx)] = 0.0
    idx[qubit], idx[qubit + n] = 1, 0
    t[tuple(idx)] = 0.0


def _collapse_vec(psi: np.ndarray, n: int, qubit: int, rng: Rng) -> int:
    t = psi.reshape((2,) * n)
    sl: List[Union[slice, int]] = [slice(None)] * n
    sl[qubit] = 1
    p1 = float(np.sum(np.abs(t[tuple(sl)]) ** 2))
    outcome = 1 if rng.random() < p1 else 0
    sl[qubit] = 1 - outcome
    t[tuple(sl)] = 0.0
    norm = np.linalg.norm(psi)
    if norm < 1e-12:
        raise SimulatorError("measurement collapsed onto a zero branch")
    psi /= norm
    return outcome


def _reduced_density_from_vec(psi: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    """Partial trace of |psi><psi| onto ``keep`` (in the given order)."""
    t = psi.reshape((2,) * n)
    k = len(keep)
    src = np.moveaxis(t, keep, range(k))
    m = src.reshape(2**k, -1)
    return m @ m.conj().T


def _reduced_density_from_mat(rho: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    t = rho.reshape((2,) * (2 * n))
    k = len(keep)
    order = {q: i for i, q in enumerate(keep)}
    subs = [0] * (2 * n)
    traced = 0
    for i in range(n):
        if i in order:
            subs[i] = order[i]
            subs[i + n] = order[i] + k
        else:
            subs[i] = subs[i + n] = 2 * k + traced
            traced += 1
    out = np.einsum(t, subs, list(range(2 * k)))
    return out.reshape(2**k, 2**k)


def partial_trace(state: QuantumState, keep: Iterable[int]) -> QuantumState:
    """Reduced state on ``keep`` (kept in the order given)."""
    keep = tuple(keep)
    n = state.num_qubits
    if len(set(keep)) != len(keep) or any(not 0 <= q < n for q in keep):
        raise StateValidationError(f"bad keep set {keep} for {n} qubits")
    if not keep:
        raise StateValidationError("cannot trace out every qubit")
    if len(keep) > MIXED_QUBIT_LIMIT:
        raise QubitLimitError(
            f"reduced state on {len(keep)} qubits exceeds the mixed ceiling"
        )
    if state.pure:
        if len(keep) == n and keep == tuple(range(n)):
            return state
        rho = _reduced_density_from_vec(state.vector(), n, keep)
    else:
        if len(keep) == n and keep == tuple(range(n)):
            return state
        rho = _reduced_density_from_mat(state.density(), n, keep)
    return QuantumState.from_density(rho)


def _renumber_after_discard(dropped: Sequence[int], width: int) -> List[int]:
    kept = [q for q in range(width) if q not in set(dropped)]
    return kept


def run_circuit(
    circuit: QuantumCircuit,
    state: QuantumState,
    rng: Optional[Rng] = None,
) -> QuantumState:
    """Run ``circuit`` on ``state`` and return the declared output register.

    The input must match the circuit arity exactly.  The result is pure
    when the input is pure and nothing was discarded or traced out by the
    output spec; otherwise it is a density operator.
    """
    if state.num_qubits != circuit.arity:
        raise SimulatorError(
            f"input has {state.num_qubits} qubits, circuit arity is {circuit.arity}"
        )
    pure = state.pure
    buf = state.vector() if pure else state.density()
    n = circuit.arity
    for g in circuit.gates:
        if g.kind == "alloc":
            if pure:
                buf = np.kron(buf, np.array([1.0, 0.0], dtype=np.complex128))
            else:
                if n + 1 > MIXED_QUBIT_LIMIT:
                    raise QubitLimitError(
                        f"alloc would grow a mixed state past {MIXED_QUBIT_LIMIT} qubits"
                    )
                buf = np.kron(buf, np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128))
            n += 1
        elif g.is_unitary:
            if pure:
                _apply_unitary_vec(buf, n, g)
            else:
                _apply_unitary_mat(buf, n, g)
        elif g.kind == "measure":
            if pure:
                if rng is None:
                    raise MeasurementNeedsRng(
                        "pure-mode measurement requires a randomness source"
                    )
                for q in g.targets:
                    _collapse_vec(buf, n, q, rng)
            else:
                for q in g.targets:
                    _dephase_mat(buf, n, q)
        elif g.kind == "discard":
            kept = _renumber_after_discard(g.targets, n)
            if len(kept) > MIXED_QUBIT_LIMIT:
                raise QubitLimitError(
                    f"discard leaves a mixed state on {len(kept)} qubits, "
                    f"above the ceiling of {MIXED_QUBIT_LIMIT}"
                )
            if pure:
                buf = _reduced_density_from_vec(buf, n, kept)
                pure = False
            else:
                buf = _reduced_density_from_mat(buf, n, kept)
            n = len(kept)
        else:  # pragma: no cover - Gate validation forbids other kinds
            raise SimulatorError(f"cannot execute gate kind {g.kind!r}")
    out = circuit.output_qubits
    if pure:
        if out == tuple(range(n)):
            return QuantumState.from_vector(buf)
        return QuantumState.from_density(_reduced_density_from_vec(buf, n, out))
    if out == tuple(range(n)):
        return QuantumState.from_density(buf)
    return QuantumState.from_density(_reduced_density_from_mat(buf, n, out))


def circuit_unitary(circuit: QuantumCircuit) -> np.ndarray:
    """The full 2^n x 2^n matrix of a purely unitary circuit."""
    if not circuit.is_unitary:
        raise SimulatorError("circuit_unitary needs a circuit with only unitary gates")
    n = circuit.arity
    dim = 2**n
    mat = np.eye(dim, dtype=np.complex128)
    tensor = mat.reshape((2,) * n + (dim,))
    for g in circuit.gates:
        _tensor_apply(
            tensor, g.payload_matrix(), g.targets, g.controls, g.control_pattern
        )
    return tensor.reshape(dim, dim)


_BASIS_SAFE_PHASE = {"id", "z", "s", "sdg", "t", "tdg"}


class BasisPathUnsupported(SimulatorError):
    """The circuit contains a gate the classical basis evaluator cannot track."""


def simulate_basis(circuit: QuantumCircuit, bits: Sequence[int]) -> Tuple[int, ...]:
    """Classically evolve a computational basis value through the circuit.

    Supports exactly the permutation-with-phase gate set (x/swap plus
    diagonal phase gates, any control pattern); phases are dropped, values
    are exact.  Raises BasisPathUnsupported on anything else.
    """
    vals = list(bits)
    if len(vals) != circuit.arity or any(b not in (0, 1) for b in vals):
        raise SimulatorError(f"bad basis input {bits!r} for arity {circuit.arity}")
    for g in circuit.gates:
        if g.kind == "alloc":
            vals.append(0)
            continue
        if g.kind == "measure":
            continue
        if g.kind == "discard":
            for q in sorted(g.targets, reverse=True):
                vals.pop(q)
            continue
        if g.kind == "named":
            if g.controls and any(
                vals[c] != b for c, b in zip(g.controls, g.control_pattern)
            ):
                continue
            if g.name == "x":
                vals[g.targets[0]] ^= 1
            elif g.name == "swap":
                a, b = g.targets
                vals[a], vals[b] = vals[b], vals[a]
            elif g.name in _BASIS_SAFE_PHASE:
                pass
            else:
                raise BasisPathUnsupported(f"gate {g.name!r} is not basis-preserving")
        else:
            raise BasisPathUnsupported("custom gates are not supported on the basis path")
    return tuple(vals)


def project_qubit(
    state: QuantumState, qubit: int, value: int
) -> Tuple[float, Optional[QuantumState]]:
    """Probability of measuring ``value`` on ``qubit`` and the normalized
    post-measurement state (None when the probability vanishes)."""
    n = state.num_qubits
    if not 0 <= qubit < n or value not in (0, 1):
        raise SimulatorError(f"bad projection qubit={qubit} value={value}")
    if state.pure:
        psi = state.vector()
        t = psi.reshape((2,) * n)
        sl: List[Union[slice, int]] = [slice(None)] * n
        sl[qubit] = 1 - value
        t[tuple(sl)] = 0.0
        prob = float(np.sum(np.abs(psi) ** 2))
        if prob < 1e-14:
            return 0.0, None
        return prob, QuantumState.from_vector(psi / np.sqrt(prob))
    rho = state.density()
    t = rho.reshape((2,) * (2 * n))
    for side in (qubit, qubit + n):
        sl = [slice(None)] * (2 * n)
        sl[side] = 1 - value
        t[tuple(sl)] = 0.0
    prob = float(np.trace(rho).real)
    if prob < 1e-14:
        return 0.0, None
    return prob, QuantumState.from_density(rho / prob)


def sample_basis(state: QuantumState, rng: Rng) -> str:
    """Draw one computational-basis outcome for all qubits."""
    p = state.probabilities()
    idx = int(rng.choice(len(p), p=p))
    return format(idx, f"0{state.num_qubits}b")


def basis_value(state: QuantumState, atol: float = 1e-9) -> str:
    """The basis label of a state that is a basis vector up to phase.

    Raises when any other basis component carries more than ``atol`` weight.
    """
    p = state.probabilities()
    idx = int(np.argmax(p))
    if abs(p[idx] - 1.0) > atol:
        raise SimulatorError(
            f"state is not a computational basis vector (top weight {p[idx]!r})"
        )
    return format(idx, f"0{state.num_qubits}b")
