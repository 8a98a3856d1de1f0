"""Command-line experiment driver.

Subcommands: decay, verify, classify, cube, oracle.  A run is fully
described by a TOML config file; `--seed` overrides the config's seed and
`--out` the output directory.  Exit codes: 0 success, 1 validation error,
2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import KINDS, load_config
from .errors import NumericalError, ValidationError
from .experiments import run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expotype",
        description="Spectral approximation experiments: decay curves, inequality "
        "suites, smoothness classification, box spectra, and the PDE oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        cmd = sub.add_parser(kind, help=f"run a '{kind}' experiment from a config file")
        cmd.add_argument("--config", required=True, help="path to the TOML config")
        cmd.add_argument("--out", default=None, help="output directory (overrides config)")
        cmd.add_argument("--seed", type=int, default=None, help="seed override (u64)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if cfg.kind != args.command:
            raise ValidationError(
                f"config kind '{cfg.kind}' does not match subcommand '{args.command}'"
            )
        out_dir = args.out if args.out is not None else (cfg.out or ".")
        written = run(cfg, out_dir, seed=args.seed)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
