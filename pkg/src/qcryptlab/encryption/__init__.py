from .games import (
    CoinFlipAdversary,
    BasisMeasureAdversary,
    GameResult,
    GameViolation,
    MODES,
    ReferenceQueryAdversary,
    TrialOracles,
    ind_game,
    wilson_half_width,
)
from .schemes import (
    Ciphertext,
    EncryptionError,
    HomKeys,
    HomScheme,
    IDEAL_KEY_LENGTH,
    PkScheme,
    SymScheme,
    UNIVERSAL_CATALOG,
    broken_scheme,
    conditional_pad_circuit,
    encode_gate,
    eval_circuit,
    gate_description_length,
    hom_eval_scheme,
    ideal_scheme,
    obf_cpa_scheme,
    pauli_gate_list,
    pk_scheme,
    prf_scheme,
    qotp_encrypt,
    universal_gate_dispatch,
)

__all__ = [
    "CoinFlipAdversary",
    "BasisMeasureAdversary",
    "GameResult",
    "GameViolation",
    "MODES",
    "ReferenceQueryAdversary",
    "TrialOracles",
    "ind_game",
    "wilson_half_width",
    "Ciphertext",
    "EncryptionError",
    "HomKeys",
    "HomScheme",
    "IDEAL_KEY_LENGTH",
    "PkScheme",
    "SymScheme",
    "UNIVERSAL_CATALOG",
    "broken_scheme",
    "conditional_pad_circuit",
    "encode_gate",
    "eval_circuit",
    "gate_description_length",
    "hom_eval_scheme",
    "ideal_scheme",
    "obf_cpa_scheme",
    "pauli_gate_list",
    "pk_scheme",
    "prf_scheme",
    "qotp_encrypt",
    "universal_gate_dispatch",
]
