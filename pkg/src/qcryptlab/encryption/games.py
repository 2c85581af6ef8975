"""Indistinguishability games for the symmetric schemes.

One game trial: sample a key, let the adversary prepare a challenge
plaintext (phase one), flip a coin and hand back an encryption of
either that plaintext or the all-zero state, then ask for a guess
(phase two).  The adversary wins by naming the coin.

Oracle discipline is the point of the harness: the mode decides which
of Enc/Dec the adversary may call in which phase, and a call outside
the allowance raises GameViolation instead of silently skewing the
experiment.  The decryption oracle dies the moment the challenge is
issued; a stashed handle raises like any other misuse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..bitstrings import random_bits, spawn_rng
from ..simulator import QuantumState, basis_state, sample_basis, basis_value, zero_state
from .schemes import Ciphertext, SymScheme

MODES = ("IND", "IND-CPA", "IND-CCA1")

_Z95 = 1.959963984540054


class GameViolation(Exception):
    pass


def wilson_half_width(wins: int, trials: int) -> float:
    """Half-width of the 95% Wilson score interval for wins/trials."""
    if trials < 1:
        raise ValueError("need at least one trial")
    p = wins / trials
    z2 = _Z95 * _Z95
    half = _Z95 * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials))
    return half / (1.0 + z2 / trials)


@dataclass(frozen=True)
class GameResult:
    scheme: str
    mode: str
    plaintext_qubits: int
    trials: int
    wins: int
    seed: int

    def __post_init__(self) -> None:
        if not 0 <= self.wins <= self.trials:
            raise ValueError(f"wins {self.wins} outside 0..{self.trials}")

    @property
    def win_rate(self) -> float:
        return self.wins / self.trials

    @property
    def advantage(self) -> float:
        return abs(2.0 * self.win_rate - 1.0)

    @property
    def ci95(self) -> float:
        return wilson_half_width(self.wins, self.trials)

    def to_record(self) -> dict:
        return {
            "scheme": self.scheme,
            "mode": self.mode,
            "n": self.plaintext_qubits,
            "trials": self.trials,
            "wins": self.wins,
            "advantage": self.advantage,
            "ci95": self.ci95,
            "seed": self.seed,
        }


class TrialOracles:
    """Phase-gated Enc/Dec handles for a single trial.

    Encryption randomness is challenger-sampled unless the game was
    built with adversary-chosen randomness switched on.
    """

    def __init__(
        self,
        scheme: SymScheme,
        key: str,
        rng: np.random.Generator,
        mode: str,
        allow_chosen_randomness: bool = False,
    ):
        self._scheme = scheme
        self._key = key
        self._rng = rng
        self._mode = mode
        self._allow_chosen = allow_chosen_randomness
        self.phase = 1
        self.enc_queries = 0
        self.dec_queries = 0

    def enc(self, rho: QuantumState, randomness: Optional[str] = None) -> Ciphertext:
        if self._mode == "IND":
            raise GameViolation("no oracles are available in IND mode")
        if randomness is not None and not self._allow_chosen:
            raise GameViolation("adversary-chosen randomness is switched off")
        if randomness is None:
            randomness = random_bits(self._scheme.randomness_length, self._rng)
        self.enc_queries += 1
        return self._scheme.enc(self._key, rho, randomness)

    def dec(self, ct: Ciphertext) -> QuantumState:
        if self._mode != "IND-CCA1":
            raise GameViolation(f"no decryption oracle in {self._mode} mode")
        if self.phase != 1:
            raise GameViolation("decryption oracle was revoked at challenge time")
        self.dec_queries += 1
        return self._scheme.dec(self._key, ct)


def ind_game(
    scheme: SymScheme,
    adversary,
    mode: str,
    trials: int,
    seed: int,
    allow_chosen_randomness: bool = False,
) -> GameResult:
    """Run the two-phase distinguishing game and aggregate the wins.

    The adversary is any object with prepare(oracles, rng) -> challenge
    plaintext and guess(ciphertext, oracles, rng) -> bit.  Coin value 0
    means the adversary's state was encrypted, 1 means the all-zero
    state was.  Per-trial randomness streams are derived from the seed
    by counter, so single trials can be replayed in isolation.
    """
    if mode not in MODES:
        raise GameViolation(f"unknown mode {mode!r}")
    if trials < 1:
        raise GameViolation("need at least one trial")
    m = scheme.plaintext_qubits
    wins = 0
    for index in range(trials):
        rng = spawn_rng(seed, f"trial-{index}")
        key = scheme.keygen(rng)
        oracles = TrialOracles(scheme, key, rng, mode, allow_chosen_randomness)
        challenge_plain = adversary.prepare(oracles, rng)
        if not isinstance(challenge_plain, QuantumState) or challenge_plain.num_qubits != m:
            raise GameViolation(f"adversary must prepare a {m}-qubit plaintext")
        coin = int(rng.integers(0, 2))
        plaintext = challenge_plain if coin == 0 else zero_state(m)
        challenge = scheme.enc(key, plaintext, random_bits(scheme.randomness_length, rng))
        oracles.phase = 2
        guess = adversary.guess(challenge, oracles, rng)
        if guess not in (0, 1):
            raise GameViolation(f"guess must be a bit, got {guess!r}")
        if guess == coin:
            wins += 1
    return GameResult(
        scheme=scheme.name,
        mode=mode,
        plaintext_qubits=m,
        trials=trials,
        wins=wins,
        seed=seed,
    )


class CoinFlipAdversary:
    """Ignores everything and guesses at random; calibrates the harness."""

    def prepare(self, oracles: TrialOracles, rng: np.random.Generator) -> QuantumState:
        return zero_state(oracles._scheme.plaintext_qubits)

    def guess(self, challenge: Ciphertext, oracles: TrialOracles, rng: np.random.Generator) -> int:
        return int(rng.integers(0, 2))


class BasisMeasureAdversary:
    """Submits the all-ones state and reads the payload in the basis.

    Guesses the zero branch exactly when the measured payload is all
    zero.  Against a fresh uniform pad this has zero advantage, which
    is what the ideal-scheme calibration checks.
    """

    def prepare(self, oracles: TrialOracles, rng: np.random.Generator) -> QuantumState:
        m = oracles._scheme.plaintext_qubits
        return basis_state(m, "1" * m)

    def guess(self, challenge: Ciphertext, oracles: TrialOracles, rng: np.random.Generator) -> int:
        m = challenge.payload.num_qubits
        outcome = sample_basis(challenge.payload, rng)
        return 1 if outcome == "0" * m else 0


class ReferenceQueryAdversary:
    """One chosen-plaintext query, then compare basis values.

    Phase one encrypts the all-zero state for reference; the guess says
    "zero branch" iff the challenge payload lands on the same basis
    value.  Defeats any scheme whose pad ignores the tag.
    """

    def __init__(self) -> None:
        self._reference: Optional[str] = None

    def prepare(self, oracles: TrialOracles, rng: np.random.Generator) -> QuantumState:
        m = oracles._scheme.plaintext_qubits
        self._reference = basis_value(oracles.enc(zero_state(m)).payload)
        return basis_state(m, "1" * m)

    def guess(self, challenge: Ciphertext, oracles: TrialOracles, rng: np.random.Generator) -> int:
        return 1 if basis_value(challenge.payload) == self._reference else 0
