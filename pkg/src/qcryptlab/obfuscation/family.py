"""Circuit families that defeat every executable obfuscator.

A family member is a four-branch switchyard.  Branch 0 carries the
circuit under test: either the point circuit for a hidden (a, b) or the
do-nothing circuit.  The other three branches form a self-contained
encrypted-computation service keyed by a hidden pad key:

* branch 1 deposits a fresh encryption of |a, 0...0> (fixed tag),
* branch 2 decrypts, applies one catalog gate named in a description
  register, re-tags, and re-encrypts,
* branch 3 decrypts and writes a into the result register exactly when
  the decrypted second half reads b.

Anyone who can *execute* a description of the whole switchyard can
replay branch 0 gate by gate through branch 2, starting from branch 1's
deposit and finishing at branch 3: the result register comes back
nonzero precisely when branch 0 is the point circuit.  That is
``adversary_homomorphic``.  A query-bounded probe strategy with no
description (``blackbox_baseline``) is stuck searching for the marked
input and stays near chance.

Register layout inside each branch, in order: description register,
tag register (n qubits), payload register (2n qubits).  The branch
selector (2 qubits) sits in front of everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..bitstrings import check_bits, int_to_bits, random_bits
from ..pseudorandom import PrfKey, ggm_eval
from ..simulator import (
    CountingOracle,
    Gate,
    QuantumCircuit,
    QuantumState,
    SimulatorError,
    basis_state,
    basis_value,
    named,
    parse_circuit,
    partial_trace,
    pauli_gate_list,
)
from .core import (
    CLASSICAL_FORM,
    CombinedCircuit,
    MalformedProgramError,
    ObfuscatedProgram,
    ObfuscationError,
    combine,
    extract_branch_gates,
    interpret,
    make_point_circuit,
)


class FamilyError(ObfuscationError):
    pass


FAMILY_CATALOG: Tuple[str, ...] = ("id", "x", "z", "h", "pmcx")

_GATE_FIELD = 3

SEL_MAIN = 0
SEL_ENC = 1
SEL_HOM = 2
SEL_CHECK = 3


@dataclass(frozen=True)
class FamilyLayout:
    """Register geometry and gate-description encoding for one size n.

    Everything here is public convention: an attacker is assumed to
    know the layout, just not the hidden (a, b, key).
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise FamilyError("need at least one qubit")

    @property
    def y_field(self) -> int:
        return max(1, (self.n - 1).bit_length())

    @property
    def operand_field(self) -> int:
        plain = max(1, (2 * self.n - 1).bit_length())
        return max(self.n + self.y_field, plain)

    @property
    def desc_length(self) -> int:
        return _GATE_FIELD + self.operand_field

    @property
    def tag_length(self) -> int:
        return self.n

    @property
    def payload_qubits(self) -> int:
        return 2 * self.n

    @property
    def desc_offset(self) -> int:
        return 0

    @property
    def tag_offset(self) -> int:
        return self.desc_length

    @property
    def payload_offset(self) -> int:
        return self.desc_length + self.tag_length

    @property
    def branch_arity(self) -> int:
        return self.desc_length + self.tag_length + self.payload_qubits

    @property
    def selector_width(self) -> int:
        return 2

    @property
    def total_arity(self) -> int:
        return self.selector_width + self.branch_arity

    def encode_plain(self, name: str, target: int) -> str:
        if name not in ("x", "z", "h"):
            raise FamilyError(f"gate {name!r} is not a plain catalog entry")
        if not 0 <= target < self.payload_qubits:
            raise FamilyError(f"target {target} outside the payload")
        index = FAMILY_CATALOG.index(name)
        operand = int_to_bits(target, self.operand_field)
        return int_to_bits(index, _GATE_FIELD) + operand

    def encode_pmcx(self, pattern: str, y_index: int) -> str:
        check_bits(pattern, self.n)
        if not 0 <= y_index < self.n:
            raise FamilyError(f"second-half index {y_index} outside 0..{self.n - 1}")
        index = FAMILY_CATALOG.index("pmcx")
        operand = pattern + int_to_bits(y_index, self.y_field)
        operand = operand + "0" * (self.operand_field - len(operand))
        return int_to_bits(index, _GATE_FIELD) + operand

    def catalog(self) -> List[Tuple[str, Tuple[Gate, ...]]]:
        """Every valid description with its payload-register gates."""
        po = self.payload_offset
        entries: List[Tuple[str, Tuple[Gate, ...]]] = []
        for name in ("x", "z", "h"):
            for target in range(self.payload_qubits):
                entries.append((self.encode_plain(name, target), (named(name, po + target),)))
        x_half = tuple(range(po, po + self.n))
        for value in range(2**self.n):
            pattern = int_to_bits(value, self.n)
            bits = tuple(int(c) for c in pattern)
            for y_index in range(self.n):
                gate = named("x", po + self.n + y_index).with_controls(x_half, bits)
                entries.append((self.encode_pmcx(pattern, y_index), (gate,)))
        return entries

    def translate_main_gate(self, gate: Gate) -> str:
        """Express one branch-0 gate as a description-register value.

        Branch-0 coordinates: the gate must touch only the payload
        register, and any controls must be exactly the payload's first
        half (the pattern-controlled-X shape the point circuit uses).
        """
        po = self.payload_offset
        if gate.kind != "named":
            raise FamilyError(f"{gate.kind} gates are outside the catalog")
        if gate.controls:
            expected = tuple(range(po, po + self.n))
            target = gate.targets[0]
            if (
                gate.name == "x"
                and gate.controls == expected
                and po + self.n <= target < po + 2 * self.n
            ):
                pattern = "".join(str(bit) for bit in gate.control_pattern)
                return self.encode_pmcx(pattern, target - po - self.n)
            raise FamilyError("controlled gate does not match the catalog shape")
        if gate.name in ("x", "z", "h"):
            target = gate.targets[0]
            if po <= target < po + 2 * self.n:
                return self.encode_plain(gate.name, target - po)
        raise FamilyError(f"gate {gate.name!r} at {gate.targets} is outside the catalog")


def layout_for_arity(total_arity: int, max_n: int = 16) -> FamilyLayout:
    for n in range(1, max_n + 1):
        layout = FamilyLayout(n)
        if layout.total_arity == total_arity:
            return layout
        if layout.total_arity > total_arity:
            break
    raise FamilyError(f"no family layout has total arity {total_arity}")


@dataclass(frozen=True)
class HomOracleFamily:
    """One keyed family member: hidden point (a, b), pad key, fixed tag.

    ``enc_randomness`` is the tag branch 1 stamps on its deposit.  Pads
    are drawn from the tree PRF of the key; re-tagging XORs a PRF image
    of the gate description into the tag, so every evaluation step
    moves to a fresh, key-dependent pad.
    """

    n: int
    key: str
    a: str
    b: str
    enc_randomness: str

    def __post_init__(self) -> None:
        check_bits(self.key, self.n)
        check_bits(self.a, self.n)
        check_bits(self.b, self.n)
        check_bits(self.enc_randomness, self.n)

    @property
    def layout(self) -> FamilyLayout:
        return FamilyLayout(self.n)

    def pad_bits(self, tag: str) -> str:
        check_bits(tag, self.layout.tag_length)
        prf = PrfKey(key=self.key, input_length=self.n, output_length=4 * self.n)
        return ggm_eval(prf, tag)

    def retag_bits(self, desc: str) -> str:
        check_bits(desc, self.layout.desc_length)
        prf = PrfKey(key=self.key, input_length=self.layout.desc_length, output_length=self.n)
        return ggm_eval(prf, desc)

    def _decrypt_gates(self, inverse: bool, controls: Sequence[int]) -> List[Gate]:
        lay = self.layout
        gates: List[Gate] = []
        for value in range(2**lay.tag_length):
            tag = int_to_bits(value, lay.tag_length)
            pattern = tuple(int(bit) for bit in tag)
            gates.extend(
                pauli_gate_list(
                    self.pad_bits(tag),
                    offset=lay.payload_offset,
                    inverse=inverse,
                    controls=controls,
                    pattern=pattern,
                )
            )
        return gates

    def enc_branch(self) -> QuantumCircuit:
        """Deposit Enc(|a, 0..0>) with the hardwired tag, XOR-style.

        Expects its registers zeroed; writes the tag, the plaintext
        halves, and the pad for that tag.
        """
        lay = self.layout
        gates: List[Gate] = []
        for i, bit in enumerate(self.enc_randomness):
            if bit == "1":
                gates.append(named("x", lay.tag_offset + i))
        for j, bit in enumerate(self.a):
            if bit == "1":
                gates.append(named("x", lay.payload_offset + j))
        gates.extend(
            pauli_gate_list(self.pad_bits(self.enc_randomness), offset=lay.payload_offset)
        )
        return QuantumCircuit(arity=lay.branch_arity, gates=tuple(gates))

    def hom_branch(self) -> QuantumCircuit:
        """Decrypt under the incoming tag, apply the described gate,
        move to the derived fresh tag, re-encrypt under it."""
        lay = self.layout
        tag_reg = tuple(range(lay.tag_offset, lay.tag_offset + lay.tag_length))
        desc_reg = tuple(range(lay.desc_offset, lay.desc_offset + lay.desc_length))
        gates: List[Gate] = list(self._decrypt_gates(inverse=True, controls=tag_reg))
        for desc, payload_gates in lay.catalog():
            pattern = tuple(int(bit) for bit in desc)
            for g in payload_gates:
                gates.append(g.with_controls(desc_reg, pattern))
            fresh = self.retag_bits(desc)
            for i, bit in enumerate(fresh):
                if bit == "1":
                    gates.append(
                        named("x", lay.tag_offset + i).with_controls(desc_reg, pattern)
                    )
        gates.extend(self._decrypt_gates(inverse=False, controls=tag_reg))
        return QuantumCircuit(arity=lay.branch_arity, gates=tuple(gates))

    def check_branch(self) -> QuantumCircuit:
        """Decrypt, then write a into the result register when the
        decrypted second half reads b.  The payload stays decrypted;
        callers read only the result."""
        lay = self.layout
        tag_reg = tuple(range(lay.tag_offset, lay.tag_offset + lay.tag_length))
        gates: List[Gate] = list(self._decrypt_gates(inverse=True, controls=tag_reg))
        y_half = tuple(range(lay.payload_offset + self.n, lay.payload_offset + 2 * self.n))
        b_pattern = tuple(int(bit) for bit in self.b)
        for j, bit in enumerate(self.a):
            if bit == "1":
                gates.append(named("x", lay.desc_offset + j).with_controls(y_half, b_pattern))
        return QuantumCircuit(arity=lay.branch_arity, gates=tuple(gates))

    def combined(self, main: Optional[QuantumCircuit] = None) -> CombinedCircuit:
        """The full switchyard; ``main`` defaults to the do-nothing branch.

        ``main`` must be a 2n-qubit unitary circuit; it acts on the
        payload register.
        """
        lay = self.layout
        if main is None:
            main = QuantumCircuit(arity=2 * self.n, gates=())
        if main.arity != 2 * self.n:
            raise FamilyError(f"main branch must have arity {2 * self.n}")
        embedded = main.embedded(lay.branch_arity, lay.payload_offset)
        return combine([embedded, self.enc_branch(), self.hom_branch(), self.check_branch()])


def make_hom_oracle_family(
    n: int, key: str, a: str, b: str, enc_randomness: str, main: Optional[QuantumCircuit] = None
) -> CombinedCircuit:
    return HomOracleFamily(n=n, key=key, a=a, b=b, enc_randomness=enc_randomness).combined(main)


@dataclass(frozen=True)
class FamilySample:
    """One draw: the switchyard, which side it came from, and the
    hidden witness (for test assertions only)."""

    combined: CombinedCircuit
    secret: int
    family: HomOracleFamily

    @property
    def is_point(self) -> bool:
        return self.secret == 0


def sample_unobfuscatable_family(n: int, rng: np.random.Generator) -> FamilySample:
    """Draw a switchyard holding either the point circuit or nothing.

    Secret 0 means the point circuit rides in branch 0, secret 1 means
    the identity does.  The corners a = 0..0 and b = 0..0 are excluded:
    a zero b makes the two sides literally identical, and a zero a
    collides the check branch's two answers, so at desk scale those
    corners (a quarter of the draws each at n = 2) would cap every
    distinguisher's gap well below the target.  The exclusion only
    removes draws that carry no signal.
    """
    if n < 1:
        raise FamilyError("need at least one qubit")
    zeros = "0" * n

    def nonzero_bits() -> str:
        while True:
            bits = random_bits(n, rng)
            if bits != zeros:
                return bits

    a = nonzero_bits()
    b = nonzero_bits()
    key = random_bits(n, rng)
    enc_randomness = random_bits(n, rng)
    secret = int(rng.integers(0, 2))
    family = HomOracleFamily(n=n, key=key, a=a, b=b, enc_randomness=enc_randomness)
    main = make_point_circuit(a, b) if secret == 0 else None
    return FamilySample(combined=family.combined(main), secret=secret, family=family)


def _read_register(state: QuantumState, start: int, length: int) -> str:
    return basis_value(partial_trace(state, range(start, start + length)))


def adversary_homomorphic(
    program: ObfuscatedProgram, copies: Sequence[ObfuscatedProgram] = ()
) -> int:
    """Decide whether branch 0 of an obfuscated switchyard maps a to b.

    Replays the published pipeline: deposit an encryption of the hidden
    a via branch 1, push every branch-0 gate through branch 2, hand the
    result to branch 3, and answer 1 exactly when the result register
    comes back nonzero.  Uses 2 + g interpretations of the program,
    where g is the branch-0 gate count.

    Only classical-description programs are supported: the pipeline
    needs the branch-0 gate list, and no registered interpreter in this
    package produces switchyard advice states.  ``copies`` exists for
    interface parity with multi-copy strategies and may stay empty.
    """
    if program.form != CLASSICAL_FORM:
        raise MalformedProgramError(
            "the gate-replay pipeline needs a classical circuit description"
        )
    circuit = parse_circuit(program.payload)
    layout = layout_for_arity(circuit.arity)
    sel = layout.selector_width
    main_gates = extract_branch_gates(circuit, sel, SEL_MAIN)
    descs = [layout.translate_main_gate(g) for g in main_gates]

    def call(selector: int, desc: str, tag: str, payload_bits: str) -> QuantumState:
        bits = int_to_bits(selector, sel) + desc + tag + payload_bits
        return interpret(program, basis_state(layout.total_arity, bits))

    def read_out(out: QuantumState) -> Tuple[str, str]:
        # Pads and replayed point-circuit gates are all controlled X / Z,
        # so honest intermediate states are basis-valued up to phase; a
        # non-basis payload means a main outside the replayed shape.
        try:
            tag = _read_register(out, sel + layout.tag_offset, layout.tag_length)
            payload = _read_register(
                out, sel + layout.payload_offset, layout.payload_qubits
            )
        except SimulatorError as exc:
            raise FamilyError(
                "replay left the computational basis; only point-or-nothing "
                "branch-0 circuits are supported at desk scale"
            ) from exc
        return tag, payload

    zeros_desc = "0" * layout.desc_length
    zeros_tag = "0" * layout.tag_length

    out = call(SEL_ENC, zeros_desc, zeros_tag, "0" * layout.payload_qubits)
    tag, payload = read_out(out)

    for desc in descs:
        out = call(SEL_HOM, desc, tag, payload)
        tag, payload = read_out(out)

    out = call(SEL_CHECK, zeros_desc, tag, payload)
    result = _read_register(out, sel + layout.desc_offset, layout.n)
    return 1 if result != "0" * layout.n else 0


@dataclass(frozen=True)
class OracleSample:
    """Oracle-access version of a family draw, for query baselines."""

    oracle: CountingOracle
    secret: int
    a: str
    b: str


def sample_point_or_identity(n: int, rng: np.random.Generator) -> OracleSample:
    """The query-model face of the same distribution: a counting oracle
    for either the point circuit or the identity, marked point hidden."""
    zeros = "0" * n
    while True:
        a = random_bits(n, rng)
        if a != zeros:
            break
    while True:
        b = random_bits(n, rng)
        if b != zeros:
            break
    secret = int(rng.integers(0, 2))
    if secret == 0:
        circuit = make_point_circuit(a, b)
    else:
        circuit = QuantumCircuit(arity=2 * n, gates=())
    return OracleSample(oracle=CountingOracle(circuit), secret=secret, a=a, b=b)


def blackbox_baseline(
    oracles: Sequence[CountingOracle], q: int, rng: np.random.Generator
) -> int:
    """Probe the first oracle at q random basis points; guess 1 only on
    evidence, otherwise flip a coin.

    A probe is (x, 0...0) for uniform x; evidence means the second half
    came back nonzero, which the identity never produces and the point
    circuit produces only at x = a.  All q probes are spent even after
    a hit, so the query count is exactly q.  Extra oracles in the list
    are left untouched: random basis advice fires a checker with
    vanishing probability, so probing it buys nothing.
    """
    if not oracles:
        raise FamilyError("need at least one oracle")
    if q < 0:
        raise FamilyError("query budget cannot be negative")
    oracle = oracles[0]
    if oracle.arity % 2 != 0:
        raise FamilyError("expected an oracle on an (x, y) register pair")
    n = oracle.arity // 2
    before = oracle.query_count
    evidence = False
    for _ in range(q):
        x = random_bits(n, rng)
        probe = [int(bit) for bit in x] + [0] * n
        out = oracle.apply_basis(probe)
        if any(out[n:]):
            evidence = True
    spent = oracle.query_count - before
    if spent != q:
        raise FamilyError(f"strategy spent {spent} queries against a budget of {q}")
    if evidence:
        return 1
    return int(rng.integers(0, 2))
