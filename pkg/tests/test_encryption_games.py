"""Distinguishing-game harness: oracle discipline, statistics, adversaries."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcryptlab.bitstrings import random_bits, spawn_rng
from qcryptlab.encryption import (
    BasisMeasureAdversary,
    Ciphertext,
    CoinFlipAdversary,
    GameResult,
    GameViolation,
    MODES,
    ReferenceQueryAdversary,
    TrialOracles,
    broken_scheme,
    ideal_scheme,
    ind_game,
    prf_scheme,
    wilson_half_width,
)
from qcryptlab.simulator import basis_state, zero_state


def test_modes_are_the_three_game_variants():
    assert MODES == ("IND", "IND-CPA", "IND-CCA1")


@given(st.integers(min_value=0, max_value=400), st.integers(min_value=1, max_value=400))
def test_wilson_half_width_matches_direct_formula(wins, trials):
    if wins > trials:
        wins, trials = trials, wins
    z = 1.959963984540054
    p = wins / trials
    expected = (
        z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    ) / (1 + z * z / trials)
    assert wilson_half_width(wins, trials) == pytest.approx(expected, abs=1e-15)
    assert 0.0 <= wilson_half_width(wins, trials) < 1.0


def test_wilson_needs_a_trial():
    with pytest.raises(ValueError):
        wilson_half_width(0, 0)


def test_game_result_statistics():
    r = GameResult(scheme="s", mode="IND", plaintext_qubits=2, trials=200, wins=150, seed=1)
    assert r.win_rate == 0.75
    assert r.advantage == pytest.approx(0.5)
    assert r.ci95 == pytest.approx(wilson_half_width(150, 200))
    record = r.to_record()
    assert record["wins"] == 150 and record["mode"] == "IND" and record["seed"] == 1
    with pytest.raises(ValueError):
        GameResult(scheme="s", mode="IND", plaintext_qubits=2, trials=5, wins=6, seed=0)


def test_unknown_mode_and_empty_game_are_violations():
    scheme = prf_scheme(2)
    with pytest.raises(GameViolation):
        ind_game(scheme, CoinFlipAdversary(), "ind", trials=5, seed=0)
    with pytest.raises(GameViolation):
        ind_game(scheme, CoinFlipAdversary(), "IND", trials=0, seed=0)


def test_ind_mode_offers_no_oracles():
    scheme = prf_scheme(2)
    oracles = TrialOracles(scheme, "01", np.random.default_rng(0), "IND")
    with pytest.raises(GameViolation):
        oracles.enc(zero_state(2))
    with pytest.raises(GameViolation):
        oracles.dec(Ciphertext(tag="00", payload=zero_state(2)))


def test_chosen_randomness_is_off_by_default():
    scheme = prf_scheme(2)
    oracles = TrialOracles(scheme, "01", np.random.default_rng(0), "IND-CPA")
    with pytest.raises(GameViolation):
        oracles.enc(zero_state(2), randomness="11")
    allowed = TrialOracles(
        scheme, "01", np.random.default_rng(0), "IND-CPA", allow_chosen_randomness=True
    )
    ct = allowed.enc(zero_state(2), randomness="11")
    assert ct.tag == "11"
    assert allowed.enc_queries == 1


def test_dec_oracle_lives_in_phase_one_of_cca1_only():
    scheme = prf_scheme(2)
    rng = np.random.default_rng(5)
    key = scheme.keygen(rng)
    cpa = TrialOracles(scheme, key, rng, "IND-CPA")
    with pytest.raises(GameViolation):
        cpa.dec(scheme.enc(key, zero_state(2), "00"))
    cca = TrialOracles(scheme, key, rng, "IND-CCA1")
    plain = basis_state(2, "10")
    out = cca.dec(scheme.enc(key, plain, "01"))
    assert cca.dec_queries == 1
    cca.phase = 2  # challenge issued: the stashed handle must now refuse
    with pytest.raises(GameViolation):
        cca.dec(scheme.enc(key, plain, "01"))


class _BadPlaintextAdversary:
    def prepare(self, oracles, rng):
        return zero_state(3)

    def guess(self, challenge, oracles, rng):
        return 0


class _BadGuessAdversary:
    def prepare(self, oracles, rng):
        return zero_state(2)

    def guess(self, challenge, oracles, rng):
        return 2


def test_game_rejects_malformed_adversaries():
    scheme = prf_scheme(2)
    with pytest.raises(GameViolation):
        ind_game(scheme, _BadPlaintextAdversary(), "IND", trials=1, seed=0)
    with pytest.raises(GameViolation):
        ind_game(scheme, _BadGuessAdversary(), "IND", trials=1, seed=0)


def test_trials_replay_from_the_seed():
    # the challenger's coin for trial i is reconstructible from the seed,
    # which pins the whole per-trial randomness layout
    scheme = prf_scheme(2)
    seed = 314
    result = ind_game(scheme, CoinFlipAdversary(), "IND", trials=20, seed=seed)
    wins = 0
    for index in range(20):
        rng = spawn_rng(seed, f"trial-{index}")
        scheme.keygen(rng)
        coin = int(rng.integers(0, 2))
        random_bits(scheme.randomness_length, rng)  # challenge randomness
        guess = int(rng.integers(0, 2))
        wins += guess == coin
    assert result.wins == wins


def test_game_results_are_reproducible():
    scheme_a = ideal_scheme(2, seed=5)
    scheme_b = ideal_scheme(2, seed=5)
    r1 = ind_game(scheme_a, BasisMeasureAdversary(), "IND", trials=60, seed=9)
    r2 = ind_game(scheme_b, BasisMeasureAdversary(), "IND", trials=60, seed=9)
    assert r1 == r2


def test_reference_query_defeats_the_tagless_scheme():
    result = ind_game(
        broken_scheme(2), ReferenceQueryAdversary(), "IND-CPA", trials=120, seed=2
    )
    assert result.advantage >= 0.9


def test_reference_query_does_not_defeat_the_prf_scheme():
    result = ind_game(
        prf_scheme(3), ReferenceQueryAdversary(), "IND-CPA", trials=200, seed=3
    )
    assert result.advantage <= 0.25


def test_coinflip_adversary_sits_at_half():
    result = ind_game(prf_scheme(2), CoinFlipAdversary(), "IND", trials=400, seed=4)
    assert result.advantage <= 0.12
    assert result.ci95 < 0.06


def test_basis_adversary_blind_against_fresh_pads():
    result = ind_game(ideal_scheme(3, seed=1), BasisMeasureAdversary(), "IND", trials=300, seed=6)
    assert result.advantage <= 0.15
