"""Command-line front end.

Subcommands: ``score``, ``compare``, ``simulate``, ``check-bounds``, and
``report`` (everything at once).  Exit codes: 0 on success, 1 on any
validation or usage error, 2 when ``--assert`` is set and a gated bound
check fails.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

from .complexity import Estimator
from .config import ExperimentConfig, ingest_config
from .errors import ValidationError
from .report import (
    bounds_section,
    build_metadata,
    compare_section,
    score_section,
    simulate_section,
    write_bundle,
)


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors reported as validation errors (exit 1)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def default_config_path() -> Path:
    return Path(resources.files("wpi").joinpath("data/default_config.json"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wpi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, simulation=False):
        p.add_argument("--config", type=Path, default=None,
                       help="experiment config JSON (default: packaged demo config)")
        p.add_argument("--out", type=Path, default=Path("wpi-out"),
                       help="output directory (default: wpi-out)")
        p.add_argument("--format", choices=["json", "tsv"], default=None,
                       help="restrict output to one format (default: both)")
        if simulation:
            p.add_argument("--seed", type=int, default=None,
                           help="override the config seed")
            p.add_argument("--samples", type=int, default=None,
                           help="override the config sample count")
            p.add_argument("--delta", type=float, default=None,
                           help="override the config confidence parameter")
            p.add_argument("--estimator", choices=[e.value for e in Estimator],
                           default=None, help="override the config estimator")
            p.add_argument("--workers", type=int, default=1,
                           help="worker processes for trajectory sampling")

    common(sub.add_parser("score", help="intelligence scores and phi per trace"))
    common(sub.add_parser("compare", help="rank substrates by phi at fixed algorithm"))

    simulate = sub.add_parser("simulate", help="sample Markov trajectories")
    common(simulate, simulation=True)
    simulate.add_argument("--steps", type=int, default=1,
                          help="transitions per trajectory (default: 1)")

    check = sub.add_parser("check-bounds", help="fluctuation and efficiency bound checks")
    common(check, simulation=True)
    check.add_argument("--assert", dest="assert_mode", action="store_true",
                       help="exit 2 if a gated check fails its 3-sigma allowance")

    full = sub.add_parser("report", help="full bundle: score, compare, simulate, bounds")
    common(full, simulation=True)
    full.add_argument("--steps", type=int, default=1)
    full.add_argument("--assert", dest="assert_mode", action="store_true")
    return parser


def _load(args) -> ExperimentConfig:
    path = args.config if args.config is not None else default_config_path()
    config = ingest_config(path)
    overrides = {}
    for attr in ("seed", "samples", "delta"):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[attr] = value
    estimator = getattr(args, "estimator", None)
    if estimator is not None:
        overrides["estimator"] = Estimator(estimator)
    if overrides:
        config = ExperimentConfig(
            substrates=config.substrates,
            suites=config.suites,
            traces=config.traces,
            models=config.models,
            sim=replace(config.sim, **overrides),
        )
    return config


def _empty_bundle(config) -> dict:
    return {
        "metadata": build_metadata(config),
        "scores": None,
        "comparison": None,
        "simulations": None,
        "bound_checks": None,
        "gates": None,
    }


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = _load(args)
        bundle = _empty_bundle(config)
        sim = config.sim
        gates = None

        if args.command in ("score", "report"):
            section = score_section(config)
            bundle["scores"] = section["suites"]
            bundle["wpi_reports"] = section["wpi_reports"]
        if args.command in ("compare", "report"):
            bundle["comparison"] = compare_section(config)
        if args.command in ("simulate", "report"):
            bundle["simulations"] = simulate_section(
                config, sim.samples, steps=args.steps, workers=args.workers
            )
        if args.command in ("check-bounds", "report"):
            sections, gates = bounds_section(
                config, sim.samples, sim.delta, sim.estimator, workers=args.workers
            )
            bundle["bound_checks"] = sections
            bundle["gates"] = gates

        written = write_bundle(args.out, bundle, fmt=args.format)
        for path in written:
            print(path)

        if getattr(args, "assert_mode", False) and gates is not None:
            failed = [g for g in gates if not g["passed"]]
            for gate in failed:
                print(f"GATE FAIL {gate['model']}/{gate['gate']}: {gate['detail']}",
                      file=sys.stderr)
            if failed:
                return 2
        return 0
    except ValidationError as exc:
        _print_validation_error(exc)
        return 1


def _print_validation_error(exc: ValidationError) -> None:
    issues = getattr(exc, "issues", None)
    if issues:
        print(f"error: {len(issues)} validation problem(s):", file=sys.stderr)
        for where, message in issues:
            print(f"  {where or '<config>'}: {message}", file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
