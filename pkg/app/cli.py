"""
Command-line interface

Usage:
    python -m app.cli oracle --n 2 --m 2 --f 8 --s 0 --alpha 1 --mu-br 4 --mode per-request
    python -m app.cli optimize --preset practical --seed 7
    python -m app.cli sweep --config mu_br_sweep.json
    python -m app.cli sweep --axis mu_br --values 1,2,4,6,8 --output mu_br_sweep.csv
    python -m app.cli simulate --r 0,6,50 --requests 1000000 --trials 20
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from app.caching.config import caching_config
from app.caching.cost import AccountingMode, CostParams, cost_curve
from app.caching.optimizer import exhaustive_oracle, get_preset, pso_optimize
from app.caching.popularity import build_catalog
from app.caching.simulator import SimConfig, validate_model
from app.exceptions import CachingException, ValidationException
from app.services.experiment_service import load_spec, parse_spec, render, run_sweep
from app.utils.formatting import format_decimal
from app.utils.logger import setup_logging

logger = logging.getLogger(__name__)


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_instance_args(parser: argparse.ArgumentParser):
    parser.add_argument("--n", type=int, default=caching_config.bs_count, help="number of base stations N")
    parser.add_argument("--m", type=int, default=caching_config.cache_size, help="cache size M (files per BS)")
    parser.add_argument("--f", type=int, default=caching_config.file_count, help="catalog size F")
    parser.add_argument("--s", type=float, default=caching_config.zipf_exponent, help="Zipf exponent s")
    parser.add_argument("--alpha", type=float, default=caching_config.alpha, help="unit RAN cost")
    parser.add_argument("--mu-br", type=float, default=caching_config.mu_br, help="backhaul-to-RAN cost ratio")
    parser.add_argument("--mode", default=caching_config.accounting_mode,
                        help="accounting mode: per-request or paper-literal")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the oracle, optimize, sweep and simulate subcommands"""
    parser = argparse.ArgumentParser(prog="edge-cache", description="Edge cache redundancy planner")
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    oracle = subparsers.add_parser("oracle", help="cost curve and exact optimum of one instance")
    _add_instance_args(oracle)
    oracle.add_argument("--seed", type=int, default=caching_config.seed)

    optimize = subparsers.add_parser("optimize", help="particle swarm search on one instance")
    _add_instance_args(optimize)
    optimize.add_argument("--preset", default="literal", choices=["literal", "practical"])
    optimize.add_argument("--swarm-size", type=int, default=None)
    optimize.add_argument("--iterations", type=int, default=None)
    optimize.add_argument("--trace", action="store_true", help="print the global-best trace")
    optimize.add_argument("--seed", type=int, default=caching_config.seed)

    sweep = subparsers.add_parser("sweep", help="parameter sweep with CSV/JSON output")
    sweep.add_argument("--config", default=None, help="JSON file with ExperimentSpec fields")
    sweep.add_argument("--axis", default=None, help="mu_br, s, M or R")
    sweep.add_argument("--values", type=_float_list, default=None)
    sweep.add_argument("--optimizer", default=None, help="oracle, pso_literal or pso_practical")
    sweep.add_argument("--mode", default=None)
    sweep.add_argument("--n", type=int, default=None)
    sweep.add_argument("--m", type=int, default=None)
    sweep.add_argument("--f", type=int, default=None)
    sweep.add_argument("--s", type=float, default=None)
    sweep.add_argument("--alpha", type=float, default=None)
    sweep.add_argument("--mu-br", type=float, default=None)
    sweep.add_argument("--ppp", action="store_true", default=None, help="random N per point")
    sweep.add_argument("--output", default=None)
    sweep.add_argument("--format", default=None, choices=["csv", "json"])
    sweep.add_argument("--seed", type=int, default=None)

    simulate = subparsers.add_parser("simulate", help="Monte-Carlo validation report")
    _add_instance_args(simulate)
    simulate.add_argument("--r", type=_int_list, default=None, help="R grid, comma-separated (default 0..M)")
    simulate.add_argument("--requests", type=int, default=caching_config.sim_requests)
    simulate.add_argument("--trials", type=int, default=caching_config.sim_trials)
    simulate.add_argument("--ppp", action="store_true", help="draw N per trial from the PPP")
    simulate.add_argument("--radius", type=float, default=caching_config.ppp_radius)
    simulate.add_argument("--density", type=float, default=caching_config.ppp_density)
    simulate.add_argument("--z-threshold", type=float, default=3.0)
    simulate.add_argument("--format", default="text", choices=["text", "json"])
    simulate.add_argument("--seed", type=int, default=caching_config.seed)
    simulate.add_argument("--positions", action="store_true", help="report drawn BS coordinates (json format)")
    return parser


def _instance(args):
    cat = build_catalog(args.f, args.s)
    costs = CostParams(alpha=args.alpha, mu_br=args.mu_br, mode=AccountingMode.parse(args.mode))
    return cat, costs


def _cmd_oracle(args) -> int:
    cat, costs = _instance(args)
    curve = cost_curve(args.n, args.m, cat, costs)
    result = exhaustive_oracle(args.n, args.m, cat, costs)

    print("R,eta,c_ran,c_bh,c_total")
    for point in curve.points:
        print(",".join([
            str(point.redundant_count),
            format_decimal(point.redundant_count / args.m),
            format_decimal(point.ran),
            format_decimal(point.backhaul),
            format_decimal(point.total),
        ]))
    if curve.infeasible:
        print(f"infeasible_r={','.join(str(r) for r in curve.infeasible)}")
    print(f"r_opt={result.r_opt}")
    print(f"eta_opt={format_decimal(result.eta_opt)}")
    print(f"cost_opt={format_decimal(result.cost_opt)}")
    return 0


def _cmd_optimize(args) -> int:
    cat, costs = _instance(args)
    cfg = get_preset(args.preset, seed=args.seed)
    if args.swarm_size is not None:
        cfg = replace(cfg, swarm_size=args.swarm_size)
    if args.iterations is not None:
        cfg = replace(cfg, max_iters=args.iterations)

    result = pso_optimize(args.n, args.m, cat, costs, cfg, record_trace=args.trace)
    oracle = exhaustive_oracle(args.n, args.m, cat, costs)

    print(f"preset={args.preset}")
    print(f"seed={args.seed}")
    print(f"eta_opt={format_decimal(result.eta_opt)}")
    print(f"r_opt={result.r_opt}")
    print(f"cost_opt={format_decimal(result.cost_opt)}")
    print(f"iterations={result.iterations_run}")
    print(f"evaluations={result.evaluations}")
    print(f"oracle_r_opt={oracle.r_opt}")
    print(f"oracle_cost_opt={format_decimal(oracle.cost_opt)}")
    if args.trace and result.trace:
        print("trace=" + ",".join(format_decimal(value) for value in result.trace))
    return 0


def _cmd_sweep(args) -> int:
    data = {}
    if args.config:
        data = load_spec(args.config).model_dump(exclude_unset=True)

    overrides = {
        "axis": args.axis,
        "values": args.values,
        "optimizer": args.optimizer,
        "mode": args.mode,
        "bs_count": args.n,
        "cache_size": args.m,
        "file_count": args.f,
        "exponent": args.s,
        "alpha": args.alpha,
        "mu_br": args.mu_br,
        "ppp": args.ppp,
        "output": args.output,
        "format": args.format,
        "seed": args.seed,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    spec = parse_spec(data)

    document = render(run_sweep(spec), spec.format)
    if spec.output:
        output_path = Path(spec.output)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(document)
        logger.info(f"Wrote {spec.format.upper()} to {output_path}")
    else:
        sys.stdout.write(document)
    return 0


def _cmd_simulate(args) -> int:
    cat, costs = _instance(args)
    sim_cfg = SimConfig(
        radius=args.radius,
        density=args.density,
        fixed_bs_count=None if args.ppp else args.n,
        requests_per_trial=args.requests,
        trials=args.trials,
        seed=args.seed,
        record_positions=args.positions,
    )
    grid = args.r if args.r is not None else list(range(args.m + 1))
    report = validate_model(sim_cfg, args.m, cat, costs, grid, z_threshold=args.z_threshold)

    if args.format == "json":
        print(json.dumps(report.model_dump(), indent=2))
    else:
        print("R,feasible,analytic,empirical,std_error,z,passed")
        for row in report.rows:
            print(",".join([
                str(row.redundant_count),
                str(row.feasible).lower(),
                format_decimal(row.analytic),
                format_decimal(row.empirical),
                format_decimal(row.std_error),
                format_decimal(row.z_score),
                str(row.passed).lower(),
            ]))
        print(f"evaluated={report.evaluated} failed={report.failed} infeasible={report.infeasible}")
        print(f"passed={str(report.passed).lower()}")
    return 0 if report.passed else 1


COMMANDS = {
    "oracle": _cmd_oracle,
    "optimize": _cmd_optimize,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
}


def cli_main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 on success, 1 when a validation report fails, 2 on invalid flags or config
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(level=args.log_level)
    try:
        return COMMANDS[args.command](args)
    except ValidationException as e:
        print(f"error: invalid {e}", file=sys.stderr)
        return 2
    except CachingException as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(cli_main())
