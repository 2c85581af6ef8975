from .core import (
    CLASSICAL_FORM,
    STATE_FORM,
    POINT_DISPATCH_INTERPRETER,
    CombinedCircuit,
    MalformedProgramError,
    ObfuscatedProgram,
    ObfuscationError,
    Obfuscator,
    PlainObfuscator,
    PointStateObfuscator,
    ProgramExhaustedError,
    combine,
    default_expansion_bound,
    extract_branch_gates,
    interpret,
    interpreter_circuit,
    make_checker_circuit,
    make_point_circuit,
    plain_obfuscate,
    point_circuit_parameters,
    register_interpreter,
)
from .family import (
    FamilyError,
    FamilyLayout,
    FamilySample,
    HomOracleFamily,
    OracleSample,
    adversary_homomorphic,
    blackbox_baseline,
    make_hom_oracle_family,
    sample_point_or_identity,
    sample_unobfuscatable_family,
)

__all__ = [
    "CLASSICAL_FORM",
    "STATE_FORM",
    "POINT_DISPATCH_INTERPRETER",
    "CombinedCircuit",
    "MalformedProgramError",
    "ObfuscatedProgram",
    "ObfuscationError",
    "Obfuscator",
    "PlainObfuscator",
    "PointStateObfuscator",
    "ProgramExhaustedError",
    "combine",
    "default_expansion_bound",
    "extract_branch_gates",
    "interpret",
    "interpreter_circuit",
    "make_checker_circuit",
    "make_point_circuit",
    "plain_obfuscate",
    "point_circuit_parameters",
    "register_interpreter",
    "FamilyError",
    "FamilyLayout",
    "FamilySample",
    "HomOracleFamily",
    "OracleSample",
    "adversary_homomorphic",
    "blackbox_baseline",
    "make_hom_oracle_family",
    "sample_point_or_identity",
    "sample_unobfuscatable_family",
]
