from .core import (
    Check,
    CheckSet,
    ExperimentConfig,
    ExperimentSpec,
    HarnessError,
    Params,
    REGISTRY,
    Report,
    append_json_report,
    config_from_dict,
    experiment_names,
    register,
    run_experiment,
    summary_table,
    write_csv_report,
)
from . import library as _library  # registration side effect

__all__ = [
    "Check",
    "CheckSet",
    "ExperimentConfig",
    "ExperimentSpec",
    "HarnessError",
    "Params",
    "REGISTRY",
    "Report",
    "append_json_report",
    "config_from_dict",
    "experiment_names",
    "register",
    "run_experiment",
    "summary_table",
    "write_csv_report",
]
