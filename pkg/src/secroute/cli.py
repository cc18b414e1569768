"""Command-line entry point.

    secroute <subcommand> [--config FILE] [--seed N] [--trials N]
             [--reps N] [--out CSV] ...

Exit codes: 0 success, 1 infeasible/unreachable, 2 invalid config, 3 I/O.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments
from .experiments import ConfigError, ExperimentConfig
from .netmodel import NetModelError
from .routing import RoutingError

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_BAD_CONFIG = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secroute",
        description="Secrecy-outage analytics, Monte Carlo validation and "
                    "secure routing for multihop relaying")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in experiments.EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--reps", type=int)
        p.add_argument("--out", help="output CSV path")
        if name == "route":
            p.add_argument("--topology", help="node CSV (id,x,y)")
            p.add_argument("--edges", help="optional edge-list CSV (from,to)")
            p.add_argument("--source", type=int)
            p.add_argument("--dest", type=int)
    return parser


def _load_config(args) -> ExperimentConfig:
    cfg = experiments.parse_config(args.config) if args.config else ExperimentConfig()
    cfg.experiment = args.command
    for key in ("seed", "trials", "reps", "out", "topology", "edges",
                "source", "dest"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    if cfg.trials < 1 or cfg.reps < 1:
        raise ConfigError("trials and reps must be >= 1")
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
    except (ConfigError, NetModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        return _dispatch(cfg)
    except (ConfigError, NetModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except RoutingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def _dispatch(cfg: ExperimentConfig) -> int:
    out = cfg.out or cfg.experiment.replace("-", "_") + ".csv"

    if cfg.experiment == "sop-curve":
        header, rows = experiments.run_sop_curve(cfg)
    elif cfg.experiment == "rate-vs-lambda":
        header, rows = experiments.run_rate_sweeps(cfg, "lambda_e")
    elif cfg.experiment == "rate-vs-epsilon":
        header, rows = experiments.run_rate_sweeps(cfg, "epsilon")
    elif cfg.experiment == "table-one":
        header, rows = experiments.run_table_one(cfg)
    elif cfg.experiment == "route":
        sol, lines = experiments.run_route(cfg)
        print("\n".join(lines))
        return EXIT_OK if sol is not None else EXIT_INFEASIBLE
    elif cfg.experiment == "validate":
        ok, header, rows = experiments.run_validate(cfg)
        experiments.write_csv(out, cfg, header, rows)
        for row in rows:
            status = "pass" if row[-1] else "FAIL"
            print(f"{row[0]}: mc={row[4]:.6g} analytic={row[3]:.6g} [{status}]")
        print(f"wrote {out}")
        return EXIT_OK if ok else EXIT_INFEASIBLE
    else:
        raise ConfigError(f"unknown experiment {cfg.experiment!r}")

    experiments.write_csv(out, cfg, header, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
