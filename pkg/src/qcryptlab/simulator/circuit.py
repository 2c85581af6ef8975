"""Circuits and their canonical text serialization.

A circuit has a fixed input arity; ``alloc`` gates may grow the register
while it runs, and ``discard`` gates shrink it (later gate indices refer to
the renumbered register).  ``output_spec`` names the qubits, in order, that
form the output register once every gate has run; ``None`` means all of
them.

The serialization is a line-oriented text format, one gate per line, with
custom matrices written row-major as re/im decimal pairs at 17 significant
digits.  Equal circuits serialize to identical bytes, which the rest of the
package relies on (programs are compared and hashed by this encoding).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .gates import Gate, GateValidationError, UNITARY_KINDS
from .state import PURE_QUBIT_LIMIT, QubitLimitError, SimulatorError

FORMAT_TAG = "qc1"


class CircuitValidationError(SimulatorError):
    pass


class SerializationError(SimulatorError):
    pass


def _walk_widths(arity: int, gates: Sequence[Gate]) -> int:
    """Validate targets against the evolving register width; return final width."""
    width = arity
    max_width = arity
    for i, g in enumerate(gates):
        if g.kind == "alloc":
            if g.targets[0] != width:
                raise CircuitValidationError(
                    f"gate {i}: alloc target {g.targets[0]} must equal current width {width}"
                )
            width += 1
            max_width = max(max_width, width)
            continue
        used = g.targets + g.controls
        for q in used:
            if q >= width:
                raise CircuitValidationError(
                    f"gate {i} ({g.kind}): qubit {q} outside current width {width}"
                )
        if g.kind == "discard":
            width -= len(g.targets)
            if width < 1:
                raise CircuitValidationError(f"gate {i}: discard empties the register")
    if max_width > PURE_QUBIT_LIMIT:
        raise QubitLimitError(
            f"circuit needs {max_width} qubits, above the ceiling of {PURE_QUBIT_LIMIT}"
        )
    return width


@dataclass(frozen=True)
class QuantumCircuit:
    arity: int
    gates: Tuple[Gate, ...]
    output_spec: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise CircuitValidationError(f"arity must be positive, got {self.arity}")
        object.__setattr__(self, "gates", tuple(self.gates))
        final = _walk_widths(self.arity, self.gates)
        object.__setattr__(self, "_final_width", final)
        if self.output_spec is not None:
            spec = tuple(self.output_spec)
            if len(set(spec)) != len(spec):
                raise CircuitValidationError(f"duplicate output qubits {spec}")
            for q in spec:
                if not 0 <= q < final:
                    raise CircuitValidationError(
                        f"output qubit {q} outside final width {final}"
                    )
            if not spec:
                raise CircuitValidationError("output register cannot be empty")
            object.__setattr__(self, "output_spec", spec)

    @property
    def final_width(self) -> int:
        return self._final_width  # type: ignore[attr-defined]

    @property
    def output_qubits(self) -> Tuple[int, ...]:
        if self.output_spec is not None:
            return self.output_spec
        return tuple(range(self.final_width))

    @property
    def is_unitary(self) -> bool:
        """True when every gate is a plain unitary (no measure/discard/alloc)."""
        return all(g.kind in UNITARY_KINDS for g in self.gates)

    def gate_count(self) -> int:
        return len(self.gates)

    def embedded(self, new_arity: int, offset: int = 0) -> "QuantumCircuit":
        """This circuit acting on qubits [offset, offset+arity) of a wider register.

        Qubits the circuit allocates are moved past the widened register, so
        indices at or above the original arity shift by ``new_arity - arity``
        while input indices shift by ``offset``.
        """
        if offset < 0 or offset + self.arity > new_arity:
            raise CircuitValidationError(
                f"cannot embed arity {self.arity} at offset {offset} into {new_arity}"
            )
        extra = new_arity - self.arity

        def remap(q: int) -> int:
            return q + offset if q < self.arity else q + extra

        gates: List[Gate] = []
        for g in self.gates:
            gates.append(
                Gate(
                    kind=g.kind,
                    targets=tuple(remap(q) for q in g.targets),
                    name=g.name,
                    matrix=g.matrix,
                    controls=tuple(remap(q) for q in g.controls),
                    control_pattern=g.control_pattern,
                )
            )
        spec = None
        if self.output_spec is not None:
            spec = tuple(remap(q) for q in self.output_spec)
        return QuantumCircuit(arity=new_arity, gates=tuple(gates), output_spec=spec)


def identity_circuit(arity: int) -> QuantumCircuit:
    return QuantumCircuit(arity=arity, gates=())


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_matrix(mat: np.ndarray) -> str:
    parts: List[str] = []
    for v in np.asarray(mat, dtype=np.complex128).reshape(-1):
        parts.append(_fmt_float(v.real))
        parts.append(_fmt_float(v.imag))
    return " ".join(parts)


def _fmt_targets(targets: Sequence[int]) -> str:
    return ",".join(str(t) for t in targets)


def serialize_circuit(circuit: QuantumCircuit) -> str:
    """Canonical text form.  Deterministic: equal circuits give equal strings."""
    out_field = "all" if circuit.output_spec is None else _fmt_targets(circuit.output_spec)
    lines = [f"{FORMAT_TAG} arity={circuit.arity} out={out_field}"]
    for g in circuit.gates:
        if g.kind == "named":
            body = f"{g.name} {_fmt_targets(g.targets)}"
        elif g.kind == "custom":
            body = f"custom {_fmt_targets(g.targets)} {_fmt_matrix(g.matrix)}"
        else:
            body = f"{g.kind} {_fmt_targets(g.targets)}"
        if g.controls:
            pat = ",".join(f"{c}={b}" for c, b in zip(g.controls, g.control_pattern))
            body += f" @ {pat}"
        lines.append(body)
    return "\n".join(lines) + "\n"


def _parse_targets(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise SerializationError(f"bad target list {text!r}") from exc


def _parse_circuit_uncached(text: str) -> QuantumCircuit:
    lines = text.strip("\n").split("\n")
    if not lines or not lines[0].startswith(FORMAT_TAG + " "):
        raise SerializationError("missing or unsupported circuit header")
    header = lines[0].split()
    fields = {}
    for tok in header[1:]:
        if "=" not in tok:
            raise SerializationError(f"bad header token {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    try:
        arity = int(fields["arity"])
    except (KeyError, ValueError) as exc:
        raise SerializationError("header missing a valid arity") from exc
    out_field = fields.get("out", "all")
    output_spec = None if out_field == "all" else _parse_targets(out_field)

    from . import gates as gate_mod

    parsed: List[Gate] = []
    for ln in lines[1:]:
        ln = ln.strip()
        if not ln:
            continue
        controls: Tuple[int, ...] = ()
        pattern: Tuple[int, ...] = ()
        if " @ " in ln:
            ln, ctrl_part = ln.split(" @ ", 1)
            pairs = []
            for item in ctrl_part.split(","):
                if "=" not in item:
                    raise SerializationError(f"bad control spec {item!r}")
                c, b = item.split("=", 1)
                pairs.append((int(c), int(b)))
            controls = tuple(c for c, _ in pairs)
            pattern = tuple(b for _, b in pairs)
        toks = ln.split()
        kind = toks[0]
        try:
            if kind in ("measure", "discard", "alloc"):
                if controls:
                    raise SerializationError(f"{kind} gates cannot carry controls")
                g = Gate(kind=kind, targets=_parse_targets(toks[1]))
            elif kind == "custom":
                targets = _parse_targets(toks[1])
                dim = 2 ** len(targets)
                nums = toks[2:]
                if len(nums) != 2 * dim * dim:
                    raise SerializationError(
                        f"custom gate on {len(targets)} qubits needs {2 * dim * dim} "
                        f"numbers, got {len(nums)}"
                    )
                try:
                    flat = np.array([float(v) for v in nums], dtype=np.float64)
                except ValueError as exc:
                    raise SerializationError("unparsable matrix entry") from exc
                mat = (flat[0::2] + 1j * flat[1::2]).reshape(dim, dim)
                g = Gate(
                    kind="custom",
                    targets=targets,
                    matrix=mat,
                    controls=controls,
                    control_pattern=pattern,
                )
            elif kind in gate_mod.NAMED_GATES:
                g = Gate(
                    kind="named",
                    targets=_parse_targets(toks[1]),
                    name=kind,
                    controls=controls,
                    control_pattern=pattern,
                )
            else:
                raise SerializationError(f"unknown gate line {ln!r}")
        except GateValidationError as exc:
            raise SerializationError(f"bad gate line {ln!r}: {exc}") from exc
        parsed.append(g)
    try:
        return QuantumCircuit(arity=arity, gates=tuple(parsed), output_spec=output_spec)
    except CircuitValidationError as exc:
        raise SerializationError(f"serialized circuit fails validation: {exc}") from exc


@lru_cache(maxsize=128)
def _parse_cached(text: str) -> QuantumCircuit:
    return _parse_circuit_uncached(text)


def parse_circuit(text: str) -> QuantumCircuit:
    """Inverse of :func:`serialize_circuit` (cached; circuits are immutable)."""
    return _parse_cached(text)
