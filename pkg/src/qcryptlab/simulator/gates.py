"""Gate objects for the dense simulator.

A gate is one of:

* a named unitary from a fixed catalog (``h``, ``x``, ``z``, ``swap``, ...),
* a custom unitary with an explicit matrix,
* a ``measure`` of one or more qubits in the computational basis,
* a ``discard`` (partial trace) of one or more qubits,
* an ``alloc``, which appends one fresh qubit in |0> at the end of the
  register (its target records the index the new qubit will take).

Named and custom unitaries may carry a control pattern: a list of control
qubits plus the bit value each control must hold for the unitary to act.
A plain CNOT is therefore ``x`` on the target with one control on bit 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .state import SimulatorError

_SQ2 = 1.0 / np.sqrt(2.0)

NAMED_GATES = {
    "id": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "h": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=np.complex128),
    "s": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=np.complex128),
    "t": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=np.complex128),
    "tdg": np.array([[1, 0], [0, np.exp(-1j * np.pi / 4)]], dtype=np.complex128),
    "swap": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
    ),
}

_NAMED_ARITY = {name: mat.shape[0].bit_length() - 1 for name, mat in NAMED_GATES.items()}

UNITARY_KINDS = ("named", "custom")
GATE_KINDS = UNITARY_KINDS + ("measure", "discard", "alloc")


class GateValidationError(SimulatorError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: Tuple[int, ...]
    name: Optional[str] = None
    matrix: Optional[np.ndarray] = field(default=None, repr=False)
    controls: Tuple[int, ...] = ()
    control_pattern: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise GateValidationError(f"unknown gate kind {self.kind!r}")
        if len(set(self.targets)) != len(self.targets):
            raise GateValidationError(f"duplicate targets {self.targets}")
        if any(t < 0 for t in self.targets):
            raise GateValidationError(f"negative target in {self.targets}")
        if self.kind == "named":
            if self.name not in NAMED_GATES:
                raise GateValidationError(f"unknown gate name {self.name!r}")
            if len(self.targets) != _NAMED_ARITY[self.name]:
                raise GateValidationError(
                    f"gate {self.name!r} needs {_NAMED_ARITY[self.name]} targets, "
                    f"got {len(self.targets)}"
                )
        elif self.kind == "custom":
            mat = self.matrix
            if mat is None:
                raise GateValidationError("custom gate needs a matrix")
            mat = np.asarray(mat, dtype=np.complex128)
            dim = 2 ** len(self.targets)
            if mat.shape != (dim, dim):
                raise GateValidationError(
                    f"matrix shape {mat.shape} does not fit {len(self.targets)} targets"
                )
            if not np.allclose(mat @ mat.conj().T, np.eye(dim), atol=1e-8):
                raise GateValidationError("custom gate matrix is not unitary")
            mat = mat.copy()
            mat.setflags(write=False)
            object.__setattr__(self, "matrix", mat)
        else:
            if self.kind == "alloc" and len(self.targets) != 1:
                raise GateValidationError("alloc takes exactly one target")
            if not self.targets:
                raise GateValidationError(f"{self.kind} needs at least one target")
        if self.kind in UNITARY_KINDS:
            if len(self.controls) != len(self.control_pattern):
                raise GateValidationError("control pattern length mismatch")
            if len(set(self.controls)) != len(self.controls):
                raise GateValidationError(f"duplicate controls {self.controls}")
            if set(self.controls) & set(self.targets):
                raise GateValidationError("controls overlap targets")
            if any(b not in (0, 1) for b in self.control_pattern):
                raise GateValidationError(f"bad control pattern {self.control_pattern}")
        elif self.controls:
            raise GateValidationError(f"{self.kind} gates cannot be controlled")

    @property
    def is_unitary(self) -> bool:
        return self.kind in UNITARY_KINDS

    def payload_matrix(self) -> np.ndarray:
        if self.kind == "named":
            return NAMED_GATES[self.name]
        if self.kind == "custom":
            return self.matrix
        raise GateValidationError(f"{self.kind} gate has no matrix")

    def with_controls(self, controls: Sequence[int], pattern: Sequence[int]) -> "Gate":
        """The same unitary with extra controls prepended."""
        if not self.is_unitary:
            raise GateValidationError(f"cannot control a {self.kind} gate")
        return Gate(
            kind=self.kind,
            targets=self.targets,
            name=self.name,
            matrix=self.matrix,
            controls=tuple(controls) + self.controls,
            control_pattern=tuple(pattern) + self.control_pattern,
        )

    def shifted(self, offset: int) -> "Gate":
        """The same gate with every qubit index moved up by offset."""
        return Gate(
            kind=self.kind,
            targets=tuple(t + offset for t in self.targets),
            name=self.name,
            matrix=self.matrix,
            controls=tuple(c + offset for c in self.controls),
            control_pattern=self.control_pattern,
        )


def named(name: str, *targets: int) -> Gate:
    return Gate(kind="named", targets=tuple(targets), name=name)


def custom(matrix: np.ndarray, targets: Sequence[int]) -> Gate:
    return Gate(kind="custom", targets=tuple(targets), matrix=np.asarray(matrix))


def controlled(base: Gate, controls: Sequence[int], pattern: Sequence[int]) -> Gate:
    return base.with_controls(controls, pattern)


def cx(control: int, target: int) -> Gate:
    return named("x", target).with_controls((control,), (1,))


def cz(control: int, target: int) -> Gate:
    return named("z", target).with_controls((control,), (1,))


def ccx(control_a: int, control_b: int, target: int) -> Gate:
    return named("x", target).with_controls((control_a, control_b), (1, 1))


def measure(*targets: int) -> Gate:
    return Gate(kind="measure", targets=tuple(targets))


def discard(*targets: int) -> Gate:
    return Gate(kind="discard", targets=tuple(targets))


def alloc(index: int) -> Gate:
    return Gate(kind="alloc", targets=(index,))
