"""Small helpers for '0'/'1' strings, the classical currency of the lab."""

from __future__ import annotations

import hashlib
from typing import Union

import numpy as np


class BitstringError(ValueError):
    pass


def check_bits(bits: str, length: int = -1) -> str:
    if not isinstance(bits, str) or set(bits) - {"0", "1"}:
        raise BitstringError(f"not a bit string: {bits!r}")
    if length >= 0 and len(bits) != length:
        raise BitstringError(f"expected {length} bits, got {len(bits)}")
    return bits


def random_bits(length: int, rng: np.random.Generator) -> str:
    return "".join("1" if b else "0" for b in rng.integers(0, 2, size=length))


def xor_bits(a: str, b: str) -> str:
    if len(a) != len(b):
        raise BitstringError(f"length mismatch: {len(a)} vs {len(b)}")
    return "".join("1" if x != y else "0" for x, y in zip(a, b))


def bits_to_int(bits: str) -> int:
    check_bits(bits)
    return int(bits, 2)


def int_to_bits(value: int, width: int) -> str:
    if value < 0 or value >= 2**width:
        raise BitstringError(f"{value} does not fit in {width} bits")
    return format(value, f"0{width}b")


def bits_to_bytes(bits: str) -> bytes:
    check_bits(bits)
    padded = bits + "0" * (-len(bits) % 8)
    return len(bits).to_bytes(4, "big") + bytes(
        int(padded[i : i + 8], 2) for i in range(0, len(padded), 8)
    )


def derive_seed(master: int, label: Union[int, str]) -> int:
    """Stable per-trial seed fan-out: hash the master seed with a label."""
    digest = hashlib.sha256(f"{master}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def spawn_rng(master: int, label: Union[int, str]) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, label))
