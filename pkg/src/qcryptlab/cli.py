"""Command line client for the laboratory.

``run`` and ``list`` drive the experiment harness; ``money`` exercises
mint, verification, and the counterfeiting baseline on a bill minted
from the given seed; ``serve`` starts the HTTP service.  Exit codes:
0 when every verdict passes, 1 on a failed verdict, 2 on bad usage or
a runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .bitstrings import spawn_rng
from .experiments import (
    ExperimentConfig,
    HarnessError,
    REGISTRY,
    append_json_report,
    config_from_dict,
    experiment_names,
    run_experiment,
    summary_table,
    write_csv_report,
)
from .money import MoneyError, counterfeit_experiment, mint, reflection_probe_strategy, verify
from .simulator import SimulatorError, fidelity, sample_random_state


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcryptlab",
        description="desk-scale quantum cryptography experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a named experiment")
    run_p.add_argument("experiment", nargs="?", help="experiment name (see: list)")
    run_p.add_argument(
        "--config", help="JSON-lines file with one config object per line"
    )
    run_p.add_argument("--n", type=int, help="problem size in qubits")
    run_p.add_argument("--trials", type=int, help="trial count override")
    run_p.add_argument("--q", type=int, help="query budget override")
    run_p.add_argument("--seed", type=int, default=0, help="master seed")
    run_p.add_argument("--out", help="report file to write")
    run_p.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="json appends one line per run; csv writes trial rows",
    )

    sub.add_parser("list", help="enumerate experiments with their defaults")

    money_p = sub.add_parser("money", help="quantum money demonstrations")
    money_sub = money_p.add_subparsers(dest="action", required=True)
    mint_p = money_sub.add_parser("mint", help="mint a bill, print its serial")
    verify_p = money_sub.add_parser("verify", help="mint then verify a candidate")
    verify_p.add_argument(
        "--genuine",
        action="store_true",
        help="verify the minted note itself instead of a random candidate",
    )
    attack_p = money_sub.add_parser(
        "attack", help="mint then run the query-bounded counterfeiter"
    )
    attack_p.add_argument("--q", type=int, default=16, help="verifier query budget")
    for p, default_n in ((mint_p, 4), (verify_p, 4), (attack_p, 6)):
        p.add_argument("--n", type=int, default=default_n, help="bill size in qubits")
        p.add_argument("--seed", type=int, default=0, help="master seed")

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    return parser


def _load_configs(args: argparse.Namespace, parser: argparse.ArgumentParser) -> List[ExperimentConfig]:
    if args.config and args.experiment:
        parser.error("give an experiment name or --config, not both")
    if args.config:
        configs = []
        with open(args.config, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                except json.JSONDecodeError as err:
                    raise HarnessError(f"{args.config}:{line_no}: not JSON: {err}")
                if not isinstance(raw, dict):
                    raise HarnessError(f"{args.config}:{line_no}: not a config object")
                configs.append(config_from_dict(raw))
        if not configs:
            raise HarnessError(f"{args.config} holds no configs")
        return configs
    if not args.experiment:
        parser.error("need an experiment name or --config")
    return [
        ExperimentConfig(
            experiment=args.experiment,
            n=args.n,
            trials=args.trials,
            q=args.q,
            seed=args.seed,
        )
    ]


def _cmd_run(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    all_pass = True
    for cfg in _load_configs(args, parser):
        report = run_experiment(cfg)
        print(summary_table(report))
        if args.out:
            if args.format == "json":
                append_json_report(report, args.out)
            else:
                write_csv_report(report, args.out)
        all_pass = all_pass and report.passed
    return 0 if all_pass else 1


def _cmd_list() -> int:
    names = experiment_names()
    width = max(len(name) for name in names)
    for name in names:
        spec = REGISTRY[name]
        defaults = " ".join(f"{k}={v}" for k, v in sorted(spec.defaults.items()))
        suffix = f"  [{defaults}]" if defaults else ""
        print(f"{name:<{width}}  {spec.summary}{suffix}")
    return 0


def _cmd_money(args: argparse.Namespace) -> int:
    bill = mint(args.n, rng=spawn_rng(args.seed, "mint"))
    if args.action == "mint":
        payload = {"n": args.n, "seed": args.seed, "serial": bill.serial}
    elif args.action == "verify":
        if args.genuine:
            candidate = bill.note
        else:
            candidate = sample_random_state(args.n, spawn_rng(args.seed, "candidate"))
        outcome = verify(bill.verifier, candidate)
        payload = {
            "n": args.n,
            "seed": args.seed,
            "serial": bill.serial,
            "genuine": bool(args.genuine),
            "accept_probability": outcome.accept_probability,
            "expected_overlap": fidelity(candidate, bill.note),
        }
    else:
        result = counterfeit_experiment(
            bill, args.q, reflection_probe_strategy, spawn_rng(args.seed, "attack")
        )
        payload = {
            "n": args.n,
            "q": args.q,
            "seed": args.seed,
            "serial": bill.serial,
            "queries_used": result.queries_used,
            "clone_fidelity": result.clone_fidelity,
        }
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args, parser)
        if args.command == "list":
            return _cmd_list()
        if args.command == "money":
            return _cmd_money(args)
        return _cmd_serve(args)
    except (HarnessError, MoneyError, SimulatorError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
