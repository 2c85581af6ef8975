"""Experiment harness: named, seeded, threshold-checked runs.

Each experiment registers under a name with its default sizes and a
runtime ceiling.  ``run_experiment`` resolves a config against those
defaults, executes the trials, and folds the measurements into a
``Report`` whose verdict is the conjunction of named threshold checks.

Reports carry no timestamps or durations on purpose: one config, one
byte sequence.  The wall-clock ceiling is enforced but only as an
error, never as report content.
"""

from __future__ import annotations

import csv
import json
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple


class HarnessError(Exception):
    pass


@dataclass(frozen=True)
class Check:
    """One named threshold comparison contributing to the verdict."""

    name: str
    value: float
    threshold: float
    direction: str
    passed: bool


class CheckSet:
    """Collects checks, applying per-name threshold overrides.

    Overrides that never match a check name are reported back so a
    typoed tolerance key fails loudly instead of silently checking the
    built-in threshold.
    """

    def __init__(self, overrides: Mapping[str, float]):
        self._overrides = {str(k): float(v) for k, v in overrides.items()}
        self._used: set = set()
        self.checks: List[Check] = []

    def add(self, name: str, value: float, threshold: float, direction: str) -> Check:
        if direction not in ("<=", ">="):
            raise HarnessError(f"unknown check direction {direction!r}")
        if name in self._overrides:
            threshold = self._overrides[name]
            self._used.add(name)
        value = float(value)
        threshold = float(threshold)
        passed = value <= threshold if direction == "<=" else value >= threshold
        out = Check(
            name=name, value=value, threshold=threshold, direction=direction, passed=passed
        )
        self.checks.append(out)
        return out

    def unused_overrides(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self._overrides) - self._used))


@dataclass(frozen=True)
class Params:
    """Resolved sizes an experiment runs with; unused fields stay 0."""

    n: int = 0
    trials: int = 0
    q: int = 0
    seed: int = 0


Runner = Callable[
    [Params, CheckSet], Tuple[Dict[str, float], List[Dict[str, object]]]
]


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    summary: str
    defaults: Mapping[str, int]
    ceiling_seconds: float
    runner: Runner


REGISTRY: Dict[str, ExperimentSpec] = {}


def register(
    name: str, summary: str, defaults: Mapping[str, int], ceiling_seconds: float
):
    """Decorator: file a runner in the registry under its public name."""

    def wrap(runner: Runner) -> Runner:
        if name in REGISTRY:
            raise HarnessError(f"duplicate experiment name {name!r}")
        REGISTRY[name] = ExperimentSpec(
            name=name,
            summary=summary,
            defaults=dict(defaults),
            ceiling_seconds=float(ceiling_seconds),
            runner=runner,
        )
        return runner

    return wrap


def experiment_names() -> Tuple[str, ...]:
    return tuple(sorted(REGISTRY))


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run: everything a report depends on, nothing else.

    Size fields left as None fall back to the experiment's defaults;
    tolerances override check thresholds by check name.
    """

    experiment: str
    n: Optional[int] = None
    trials: Optional[int] = None
    q: Optional[int] = None
    seed: int = 0
    tolerances: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        # parse-time rejection; run_experiment re-checks for configs
        # constructed before any experiment registered
        if REGISTRY and self.experiment not in REGISTRY:
            known = ", ".join(experiment_names())
            raise HarnessError(f"unknown experiment {self.experiment!r}; known: {known}")


_CONFIG_FIELDS = ("experiment", "n", "trials", "q", "seed", "tolerances")


def config_from_dict(raw: Mapping) -> ExperimentConfig:
    """An ExperimentConfig from one parsed JSON object, strictly."""
    unknown = sorted(set(raw) - set(_CONFIG_FIELDS))
    if unknown:
        raise HarnessError(f"unknown config fields: {', '.join(unknown)}")
    if "experiment" not in raw:
        raise HarnessError("config needs an experiment name")
    sizes = {}
    for name in ("n", "trials", "q"):
        value = raw.get(name)
        if value is not None and not isinstance(value, int):
            raise HarnessError(f"config field {name!r} must be an integer")
        sizes[name] = value
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise HarnessError("config field 'seed' must be an integer")
    tolerances = raw.get("tolerances", {})
    if not isinstance(tolerances, Mapping):
        raise HarnessError("config field 'tolerances' must be an object")
    return ExperimentConfig(
        experiment=str(raw["experiment"]),
        n=sizes["n"],
        trials=sizes["trials"],
        q=sizes["q"],
        seed=seed,
        tolerances={str(k): float(v) for k, v in tolerances.items()},
    )


@dataclass(frozen=True)
class Report:
    """Everything one run produced.

    ``trial_rows`` feed the CSV export and stay out of the JSON line,
    which holds only the aggregate.
    """

    experiment: str
    inputs: Mapping[str, object]
    metrics: Mapping[str, float]
    checks: Tuple[Check, ...]
    verdict: str
    trial_rows: Tuple[Mapping[str, object], ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_obj(self) -> dict:
        return {
            "experiment": self.experiment,
            "inputs": dict(self.inputs),
            "metrics": {k: float(v) for k, v in self.metrics.items()},
            "checks": [
                {
                    "name": c.name,
                    "value": c.value,
                    "threshold": c.threshold,
                    "direction": c.direction,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
            "verdict": self.verdict,
        }

    def json_line(self) -> str:
        return json.dumps(
            self.to_json_obj(), sort_keys=True, separators=(",", ":"), allow_nan=False
        )


def run_experiment(cfg: ExperimentConfig) -> Report:
    """Resolve, execute, check: the one entry point every caller shares.

    Size overrides must name fields the experiment actually takes, and
    every tolerance override must land on a check, so a config cannot
    half-apply.  A run past its registered ceiling is an error rather
    than a slow pass.
    """
    spec = REGISTRY.get(cfg.experiment)
    if spec is None:
        known = ", ".join(experiment_names()) or "none registered"
        raise HarnessError(f"unknown experiment {cfg.experiment!r}; known: {known}")
    if not 0 <= cfg.seed < 2**64:
        raise HarnessError("seed must fit in 64 bits")
    inputs: Dict[str, object] = {"seed": int(cfg.seed)}
    resolved: Dict[str, int] = {}
    for name in ("n", "trials", "q"):
        given = getattr(cfg, name)
        if name in spec.defaults:
            value = int(spec.defaults[name] if given is None else given)
            # a zero default marks a sentinel the runner interprets itself
            floor = 0 if spec.defaults[name] == 0 else 1
            if value < floor:
                raise HarnessError(f"{spec.name} needs {name} >= {floor}, got {value}")
            resolved[name] = value
            inputs[name] = value
        elif given is not None:
            raise HarnessError(f"experiment {spec.name!r} takes no {name}")
    inputs["tolerances"] = {k: float(v) for k, v in sorted(cfg.tolerances.items())}
    gate = CheckSet(cfg.tolerances)
    params = Params(
        n=resolved.get("n", 0),
        trials=resolved.get("trials", 0),
        q=resolved.get("q", 0),
        seed=int(cfg.seed),
    )
    start = time.perf_counter()
    metrics, rows = spec.runner(params, gate)
    elapsed = time.perf_counter() - start
    leftover = gate.unused_overrides()
    if leftover:
        raise HarnessError(
            f"tolerance overrides matched no check: {', '.join(leftover)}"
        )
    if not gate.checks:
        raise HarnessError(f"{spec.name} produced no checks")
    if elapsed > spec.ceiling_seconds:
        raise HarnessError(
            f"{spec.name} took {elapsed:.1f}s, over its "
            f"{spec.ceiling_seconds:.0f}s ceiling"
        )
    verdict = "pass" if all(c.passed for c in gate.checks) else "fail"
    return Report(
        experiment=spec.name,
        inputs=inputs,
        metrics={k: float(v) for k, v in metrics.items()},
        checks=tuple(gate.checks),
        verdict=verdict,
        trial_rows=tuple(dict(r) for r in rows),
    )


_write_lock = threading.Lock()


def append_json_report(report: Report, path: str) -> None:
    """One line per run, append-only; concurrent writers are serialized."""
    line = report.json_line()
    with _write_lock:
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")


def write_csv_report(report: Report, path: str) -> None:
    """Trial-level table; falls back to the checks when a run keeps no rows."""
    rows: List[Dict[str, object]] = [dict(r) for r in report.trial_rows]
    if not rows:
        rows = [
            {
                "name": c.name,
                "value": c.value,
                "threshold": c.threshold,
                "direction": c.direction,
                "passed": int(c.passed),
            }
            for c in report.checks
        ]
    header: List[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    with _write_lock:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)


def summary_table(report: Report) -> str:
    """Aligned check table for standard output."""
    lines = [f"{report.experiment}: {report.verdict}"]
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        mark = "pass" if c.passed else "FAIL"
        lines.append(
            f"  {c.name:<{width}}  {c.value:.6g} {c.direction} "
            f"{c.threshold:.6g}  [{mark}]"
        )
    return "\n".join(lines)
