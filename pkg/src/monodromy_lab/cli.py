"""Command-line interface: `monodromy-lab list` and `monodromy-lab run`."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import MonodromyLabError
from .harness import ExperimentConfig, emit_report, registry_names, run_experiment


def _parse_tol(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise SystemExit(f"--tol expects KEY=VALUE, got {item!r}")
        key, val = item.split("=", 1)
        out[key] = float(val)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="monodromy-lab",
        description="Numerically verify the monodromy identities of Hadamard "
                    "products of functions with integrable singularities.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list the registered experiments")
    runp = sub.add_parser("run", help="run one experiment and report residuals")
    runp.add_argument("experiment", help="experiment name (see `list`)")
    runp.add_argument("--seed", type=int, default=None, help="sample-point seed")
    runp.add_argument("--samples", type=int, default=None,
                      help="sample-point count where applicable")
    runp.add_argument("--coeffs", type=int, default=None,
                      help="series truncation length override")
    runp.add_argument("--tol", action="append", metavar="KEY=VAL",
                      help="tolerance override (repeatable)")
    runp.add_argument("--out", default=None, help="output file path")
    runp.add_argument("--format", choices=("json", "csv", "human"), default=None)
    runp.add_argument("--config", default=None,
                      help="JSON config file; command-line flags override it")
    return p


def _config_from_args(args) -> ExperimentConfig:
    base = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
    tolerances = dict(base.get("tolerances", {}))
    tolerances.update(_parse_tol(args.tol))
    return ExperimentConfig(
        name=args.experiment,
        seed=args.seed if args.seed is not None else int(base.get("seed", 0)),
        samples=args.samples if args.samples is not None else base.get("samples"),
        coeff_len=args.coeffs if args.coeffs is not None else base.get("coeff_len"),
        tolerances=tolerances,
        out_path=args.out if args.out is not None else base.get("out_path"),
        fmt=args.format if args.format is not None else base.get("format", "human"),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name in registry_names():
            print(name)
        return 0
    config = _config_from_args(args)
    try:
        report = run_experiment(config)
    except MonodromyLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(report, config.fmt, config.out_path)
    if config.out_path:
        print(f"wrote {config.out_path} ({'pass' if report.passed else 'FAIL'})")
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
