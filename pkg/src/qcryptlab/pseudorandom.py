"""Length-doubling PRG, tree-based PRF, and a serialization-based OWF.

The default PRG expands a seed through SHAKE-256 with a domain tag.  That
is a test-grade choice: it is deterministic, well mixed, and fast, but
nothing here is a security proof, and the expansion is swappable through
:class:`PrgSpec` precisely so the construction, not the primitive, is what
the rest of the package depends on.

The PRF is the classic tree construction: walk the input bits, keeping
the left or right half of the expanded seed at each level, then expand
the leaf once more when the requested output is longer than the seed.

The one-way function candidate serializes a canonically obfuscated point
circuit; distinct (a, b) give distinct descriptions, and the description
evaluates the point function without revealing how it was produced beyond
what the plain obfuscator leaks (which is everything; see the obfuscation
module for why that is the interesting part).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable

from .bitstrings import BitstringError, check_bits


def _shake_expand(seed_bits: str, out_bits: int, tag: bytes = b"qcryptlab-prg") -> str:
    payload = tag + len(seed_bits).to_bytes(4, "big") + seed_bits.encode("ascii")
    n_bytes = (out_bits + 7) // 8
    digest = hashlib.shake_256(payload).digest(n_bytes)
    bits = "".join(format(byte, "08b") for byte in digest)
    return bits[:out_bits]


def default_expansion(seed_bits: str) -> str:
    return _shake_expand(seed_bits, 2 * len(seed_bits))


@dataclass(frozen=True)
class PrgSpec:
    """A length-doubling generator: seed_length bits in, twice that out."""

    seed_length: int
    expand: Callable[[str], str] = default_expansion

    def __post_init__(self) -> None:
        if self.seed_length < 1:
            raise BitstringError(f"seed length must be positive, got {self.seed_length}")

    def __call__(self, seed: str) -> str:
        check_bits(seed, self.seed_length)
        out = self.expand(seed)
        check_bits(out)
        if len(out) != 2 * self.seed_length:
            raise BitstringError(
                f"expansion returned {len(out)} bits, wanted {2 * self.seed_length}"
            )
        return out


@dataclass(frozen=True)
class PrfKey:
    """Key material plus the shape of the tree-PRF it drives."""

    key: str
    input_length: int
    output_length: int
    prg: PrgSpec = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        check_bits(self.key)
        if not self.key:
            raise BitstringError("empty PRF key")
        if self.input_length < 1 or self.output_length < 1:
            raise BitstringError("PRF input and output lengths must be positive")
        if self.prg is None:
            object.__setattr__(self, "prg", PrgSpec(seed_length=len(self.key)))
        elif self.prg.seed_length != len(self.key):
            raise BitstringError(
                f"PRG seed length {self.prg.seed_length} does not match key "
                f"length {len(self.key)}"
            )


def ggm_eval(key: PrfKey, input_bits: str) -> str:
    """Evaluate the tree PRF at one input point.

    Each input bit selects the left or right half of the doubled seed; the
    leaf is expanded further (and truncated) when output_length exceeds
    the seed length.
    """
    check_bits(input_bits, key.input_length)
    state = key.key
    half = len(state)
    for bit in input_bits:
        doubled = key.prg(state)
        state = doubled[:half] if bit == "0" else doubled[half:]
    if key.output_length <= len(state):
        return state[: key.output_length]
    out = key.prg(state)
    while len(out) < key.output_length:
        out = _shake_expand(out, 2 * len(out), tag=b"qcryptlab-prg-leaf")
    return out[: key.output_length]


def owf_eval(a: str, b: str, r: str) -> str:
    """Candidate one-way function: serialize a canonically obfuscated point circuit.

    ``a`` selects the marked input, ``b`` is the single output bit XORed in
    on a hit, ``r`` is obfuscation randomness (absorbed by the plain
    obfuscator's canonical form, so the output is a deterministic function
    of all three arguments).  Returns the canonical text description, which
    parses back into a circuit computing the same point function.
    """
    from .obfuscation import make_point_circuit, plain_obfuscate

    check_bits(a)
    check_bits(b, 1)
    check_bits(r)
    circuit = make_point_circuit(a, b)
    program = plain_obfuscate(circuit, randomness=r)
    return program.payload
