"""Command-line entry point: one subcommand per experiment.

    pointerlab circulant-spectrum --param n=256 --param lambda=0.5 --out circulant.csv
    pointerlab parity-census --param dim=7 --seed 3 --format json --check

Exit status is 0 on success, 2 on a configuration or output error and 1
when ``--check`` finds a failing assertion.
"""

from __future__ import annotations

import argparse
import sys

from ..errors import ConfigError
from .config import SCHEMAS, Experiment, ExperimentConfig, Format, resolve_seed
from .experiments import check, run
from .output import emit


def _parse_param(text: str):
    if "=" not in text:
        raise ConfigError(f"--param expects key=value, got {text!r}")
    key, value = text.split("=", 1)
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pointerlab", description="Pointer-state and reduced-density-matrix experiments.")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for exp in Experiment:
        schema = SCHEMAS[exp]
        epilog = "parameters:\n" + "\n".join(
            f"  {name:<16} {spec.doc} (default {spec.default})" for name, spec in schema.items()
        )
        p = sub.add_parser(exp.value, epilog=epilog, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                       help="experiment parameter; repeat as needed, lists are comma-separated")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=[f.value for f in Format], default=Format.CSV.value)
        p.add_argument("--seed", type=int, default=None, help="overrides $POINTERLAB_SEED")
        p.add_argument("--force", action="store_true", help="overwrite an existing output file")
        p.add_argument("--check", action="store_true", help="run the experiment's built-in assertions")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        params = dict(_parse_param(p) for p in args.param)
        config = ExperimentConfig(
            experiment=Experiment(args.experiment),
            params=params,
            seed=resolve_seed(args.seed),
            output_path=args.out,
            format=Format(args.format),
        ).validated()
        result = run(config)
        emit(result, config, force=args.force)
    except ConfigError as exc:
        print(f"pointerlab: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"pointerlab: {exc}", file=sys.stderr)
        return 2

    if args.check:
        failed = 0
        for name, ok, observed in check(result):
            print(f"{'PASS' if ok else 'FAIL'}  {name}  (observed {observed})", file=sys.stderr)
            failed += not ok
        if failed:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
