"""Final gate: one test per published claim, one verdict line per criterion.

Each test runs the relevant experiment at its published sizes, reads the
frozen thresholds back out of the report, and prints a single pass/fail
line so the gate can be audited from plain pytest output.
"""

import time

import pytest

from qcryptlab.bitstrings import spawn_rng
from qcryptlab.experiments import config_from_dict, experiment_names, run_experiment
from qcryptlab.simulator import (
    QuantumCircuit,
    channel_distance_estimate,
    named,
    phase_invariant_distance,
    run_circuit,
    trace_distance,
    zero_state,
)


def _run(name, **overrides):
    config = config_from_dict({"experiment": name, **overrides})
    start = time.perf_counter()
    report = run_experiment(config)
    elapsed = time.perf_counter() - start
    obj = report.to_json_obj()
    checks = {c["name"]: c for c in obj["checks"]}
    return report, checks, elapsed


def _verdict(capsys, number, label, failures):
    status = "FAIL" if failures else "pass"
    with capsys.disabled():
        print(f"criterion {number:2d} ({label}): {status}")
    assert not failures, f"criterion {number}: " + "; ".join(failures)


def test_criterion_01_pad_uniformity(capsys):
    _, checks, elapsed = _run("otp-uniformity")  # covers n = 1..3 internally
    c = checks["uniformity-distance"]
    failures = []
    if not c["value"] <= 1e-10:
        failures.append(f"distance {c['value']} > 1e-10")
    if not elapsed < 5.0:
        failures.append(f"took {elapsed:.1f}s")
    _verdict(capsys, 1, "pad uniformity", failures)


def test_criterion_02_scheme_roundtrip(capsys):
    _, checks, elapsed = _run("scheme-roundtrip")  # n = 3, 200 plaintexts
    c = checks["roundtrip-distance"]
    failures = []
    if not c["value"] <= 1e-9:
        failures.append(f"distance {c['value']} > 1e-9")
    if not elapsed < 30.0:
        failures.append(f"took {elapsed:.1f}s")
    _verdict(capsys, 2, "scheme roundtrip", failures)


def test_criterion_03_game_calibration(capsys):
    # trials = 0 keeps the published per-game counts: 10000 / 500 / 2000
    _, checks, elapsed = _run("ind-game")
    failures = []
    if not checks["coinflip-advantage"]["value"] <= 0.05:
        failures.append(f"coin flip {checks['coinflip-advantage']['value']}")
    if not checks["broken-advantage"]["value"] >= 0.9:
        failures.append(f"broken scheme {checks['broken-advantage']['value']}")
    if not checks["ideal-advantage"]["value"] <= 0.1:
        failures.append(f"ideal scheme {checks['ideal-advantage']['value']}")
    if not elapsed < 120.0:
        failures.append(f"took {elapsed:.1f}s")
    _verdict(capsys, 3, "game calibration", failures)


def test_criterion_04_homomorphic_attack_gap(capsys):
    _, checks, elapsed = _run("unobf-attack")  # n = 2, 200 samples per family
    c = checks["distinguishing-gap"]
    failures = []
    if not c["value"] >= 0.9:
        failures.append(f"gap {c['value']} < 0.9")
    if not elapsed < 120.0:
        failures.append(f"took {elapsed:.1f}s")
    _verdict(capsys, 4, "homomorphic attack gap", failures)


def test_criterion_05_blackbox_baseline(capsys):
    _, checks, elapsed = _run("blackbox-baseline")  # n = 8, q = 8, 5000 trials
    c = checks["query-advantage"]
    bound = 0.5 * (2.0 * 8 / 2.0**8) + 0.05
    failures = []
    if c["threshold"] != pytest.approx(bound, abs=1e-12):
        failures.append(f"threshold {c['threshold']} is not the query bound {bound}")
    if not c["value"] <= bound:
        failures.append(f"advantage {c['value']} > {bound}")
    if not elapsed < 60.0:
        failures.append(f"took {elapsed:.1f}s")
    _verdict(capsys, 5, "black-box baseline", failures)


def test_criterion_06_gate_by_gate_evaluation(capsys):
    _, checks, elapsed = _run("hom-pipeline")  # n = 2, circuit lengths 1..8
    c = checks["hom-distance"]
    failures = []
    if not c["value"] <= 1e-8:
        failures.append(f"distance {c['value']} > 1e-8")
    if not elapsed < 60.0:
        failures.append(f"took {elapsed:.1f}s")
    _verdict(capsys, 6, "gate-by-gate evaluation", failures)


def test_criterion_07_money_verification(capsys):
    _, verify_checks, t_verify = _run("money-verify")  # n = 4, 100 pairs
    _, forge_checks, t_forge = _run("money-counterfeit")  # n = 6, q = 16, 500
    failures = []
    if not verify_checks["accept-error"]["value"] <= 1e-8:
        failures.append(f"accept error {verify_checks['accept-error']['value']}")
    if not verify_checks["repeat-fidelity"]["value"] >= 1.0 - 1e-8:
        failures.append(f"repeat fidelity {verify_checks['repeat-fidelity']['value']}")
    if not forge_checks["counterfeit-fidelity"]["value"] <= 0.1:
        failures.append(
            f"counterfeit fidelity {forge_checks['counterfeit-fidelity']['value']}"
        )
    if not t_verify + t_forge < 120.0:
        failures.append(f"took {t_verify + t_forge:.1f}s")
    _verdict(capsys, 7, "money verification", failures)


def test_criterion_08_witness_encryption(capsys):
    _, checks, elapsed = _run("witenc-roundtrip")  # sizes 2 and 3, 10 + 10 each
    failures = []
    for size in (2, 3):
        comp = checks[f"completeness-n{size}"]["value"]
        sound = checks[f"soundness-n{size}"]["value"]
        if not comp >= 1.0 - 2.0**-size - 1e-6:
            failures.append(f"completeness n={size} is {comp}")
        if not sound <= 2.0**-size + 1e-4:
            failures.append(f"soundness n={size} is {sound}")
    if not elapsed < 120.0:
        failures.append(f"took {elapsed:.1f}s")
    _verdict(capsys, 8, "witness encryption", failures)


def test_criterion_09_metric_reference_points(capsys):
    plus = run_circuit(QuantumCircuit(arity=1, gates=(named("h", 0),)), zero_state(1))
    d_state = trace_distance(zero_state(1), plus)
    z = QuantumCircuit(arity=1, gates=(named("z", 0),))
    x = QuantumCircuit(arity=1, gates=(named("x", 0),))
    wire = QuantumCircuit(arity=1, gates=())
    d_phase = phase_invariant_distance(z, wire)
    est = channel_distance_estimate(x, wire, rng=spawn_rng(0, "probes")).estimate
    failures = []
    if abs(d_state - 2.0**-0.5) > 1e-10:
        failures.append(f"state distance {d_state}")
    if abs(d_phase - 2.0**0.5) > 1e-10:
        failures.append(f"phase distance {d_phase}")
    if not est >= 0.99:
        failures.append(f"channel estimate {est}")
    _verdict(capsys, 9, "metric reference points", failures)


def test_criterion_10_deterministic_reports(capsys):
    # light configs keep the double runs quick without touching the claim
    light = {
        "blackbox-baseline": {"n": 6, "q": 4, "trials": 100},
        "hom-pipeline": {"trials": 4},
        "ind-game": {"trials": 30},
        "metric-suite": {},
        "money-counterfeit": {"n": 3, "q": 4, "trials": 10},
        "money-verify": {"n": 2, "trials": 10},
        "otp-uniformity": {"n": 2, "trials": 2},
        "scheme-roundtrip": {"n": 2, "trials": 10},
        "unobf-attack": {"n": 1, "trials": 10},
        "witenc-roundtrip": {"n": 2, "trials": 4},
    }
    failures = []
    for name in experiment_names():
        overrides = light[name]
        first, _, _ = _run(name, **overrides)
        second, _, _ = _run(name, **overrides)
        if first.json_line() != second.json_line():
            failures.append(f"{name} reports differ")
    _verdict(capsys, 10, "deterministic reports", failures)
