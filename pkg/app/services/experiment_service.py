"""Parameter sweeps and their CSV/JSON output"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple
import csv
import io
import json
import logging
import math
import time

from pydantic import ValidationError

from app.caching.cost import CostParams, total_cost
from app.caching.layout import LayoutParams, is_feasible
from app.caching.optimizer import exhaustive_oracle, get_preset, pso_optimize
from app.caching.popularity import Catalog, build_catalog
from app.caching.simulator import SimConfig, sample_bs_count, trial_rng
from app.exceptions import ConfigException, OptimizationException, ValidationException
from app.schemas.experiment import SWEEP_COLUMNS, ExperimentSpec, SweepRow
from app.schemas.optimization import OptimResult
from app.utils.formatting import format_decimal

logger = logging.getLogger(__name__)


def load_spec(path: str) -> ExperimentSpec:
    """
    Load an ExperimentSpec from a flat JSON object.

    Raises:
        ConfigException: unreadable file or malformed JSON
        ValidationException: unknown keys or invalid values, naming the field
    """
    config_path = Path(path)
    try:
        data = json.loads(config_path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigException(f"Config file not found: {config_path}")
    except json.JSONDecodeError as e:
        raise ConfigException(f"Config file {config_path} is not valid JSON: {e}")

    if not isinstance(data, dict):
        raise ConfigException(f"Config file {config_path} must contain a JSON object")
    return parse_spec(data)


def _integral(value: float, field: str) -> int:
    if not float(value).is_integer():
        raise ValidationException(field, f"axis value {value} must be an integer")
    return int(value)


def _scaled_file_count(base: int, needed: int) -> int:
    """Smallest multiple of the configured catalog size covering `needed` files"""
    if needed <= base:
        return base
    return base * math.ceil(needed / base)


def _solve(spec: ExperimentSpec, bs_count: int, cache_size: int, cat: Catalog, c: CostParams) -> OptimResult:
    if spec.optimizer == "oracle":
        return exhaustive_oracle(bs_count, cache_size, cat, c)
    cfg = get_preset(spec.optimizer, seed=spec.seed)
    return pso_optimize(bs_count, cache_size, cat, c, cfg, record_trace=False)


def _baseline(bs_count: int, cache_size: int, redundant_count: int, cat: Catalog, c: CostParams) -> Optional[float]:
    p = LayoutParams(bs_count, cache_size, redundant_count)
    return total_cost(p, cat, c) if is_feasible(p, cat) else None


def _reduction_pct(cost: Optional[float], baseline: Optional[float]) -> Optional[float]:
    if cost is None or baseline is None:
        return None
    if baseline == 0:
        return 0.0
    return 100.0 * (1.0 - cost / baseline)


def run_sweep(spec: ExperimentSpec) -> List[SweepRow]:
    """
    Solve the redundancy problem at every axis value.

    Rows come out in ascending axis order. Each row also carries both
    baselines: every BS caching different files (eta = 0) and every BS
    caching the same files (eta = 1). On the R axis the layout is fixed
    instead of optimized, which yields the cost-versus-eta curve.
    """
    start = time.time()
    values = sorted(spec.values)
    sim_cfg = SimConfig(radius=spec.radius, density=spec.density, seed=spec.seed)

    # BS count per point: fixed, or one PPP draw per point index
    bs_counts = [
        sample_bs_count(sim_cfg, trial_rng(spec.seed, index)) if spec.ppp else spec.bs_count
        for index in range(len(values))
    ]

    file_count = spec.file_count
    if spec.axis == "M":
        cache_sizes = [_integral(value, "values") for value in values]
        needed = max(m * n for m, n in zip(cache_sizes, bs_counts))
        file_count = _scaled_file_count(spec.file_count, needed)
        if file_count != spec.file_count:
            logger.info(f"Catalog raised from F={spec.file_count} to F={file_count} to cover M*N={needed}")

    catalogs: Dict[Tuple[int, float], Catalog] = {}
    rows: List[SweepRow] = []
    for value, bs_count in zip(values, bs_counts):
        cache_size = spec.cache_size
        exponent = spec.exponent
        mu_br = spec.mu_br
        if spec.axis == "M":
            cache_size = _integral(value, "values")
        elif spec.axis == "s":
            exponent = value
        elif spec.axis == "mu_br":
            mu_br = value

        key = (file_count, exponent)
        if key not in catalogs:
            catalogs[key] = build_catalog(file_count, exponent)
        cat = catalogs[key]
        c = CostParams(alpha=spec.alpha, mu_br=mu_br, mode=spec.mode)

        optimizer = spec.optimizer
        note = None if file_count == spec.file_count else f"file_count raised to {file_count}"
        eta_opt = r_opt = cost_opt = None
        try:
            if spec.axis == "R":
                optimizer = "fixed"
                r_opt = _integral(value, "values")
                p = LayoutParams(bs_count, cache_size, r_opt)
                if is_feasible(p, cat):
                    eta_opt, cost_opt = p.redundancy_ratio, total_cost(p, cat, c)
                else:
                    note = f"infeasible: R={r_opt} needs {p.distinct_count} files, F={file_count}"
            else:
                result = _solve(spec, bs_count, cache_size, cat, c)
                eta_opt, r_opt, cost_opt = result.eta_opt, result.r_opt, result.cost_opt
        except OptimizationException as e:
            note = f"infeasible: {e}"

        if note and note.startswith("infeasible"):
            logger.warning(f"Sweep {spec.axis}={value}: {note}")

        cost_eta0 = _baseline(bs_count, cache_size, 0, cat, c)
        cost_eta1 = _baseline(bs_count, cache_size, cache_size, cat, c)
        row = SweepRow(
            axis=value,
            eta_opt=eta_opt,
            r_opt=r_opt,
            cost_opt=cost_opt,
            cost_eta0=cost_eta0,
            cost_eta1=cost_eta1,
            reduction_vs_eta0_pct=_reduction_pct(cost_opt, cost_eta0),
            reduction_vs_eta1_pct=_reduction_pct(cost_opt, cost_eta1),
            mode=spec.mode.value,
            optimizer=optimizer,
            seed=spec.seed,
            axis_name=spec.axis,
            bs_count=bs_count,
            cache_size=cache_size,
            file_count=file_count,
            note=note,
        )
        logger.info(
            f"Sweep {spec.axis}={value}: N={bs_count}, eta_opt={eta_opt}, R_opt={r_opt}, cost={cost_opt}"
        )
        rows.append(row)

    elapsed_ms = int((time.time() - start) * 1000)
    logger.info(f"Sweep over {spec.axis} finished: {len(rows)} rows ({elapsed_ms}ms)")
    return rows


def emit_csv(rows: List[SweepRow]) -> str:
    """CSV document with the stable header; LF line endings, 12 significant digits"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        record = row.model_dump(include=set(SWEEP_COLUMNS))
        writer.writerow([
            record[column] if isinstance(record[column], str) else format_decimal(record[column])
            for column in SWEEP_COLUMNS
        ])
    return buffer.getvalue()


def emit_json(rows: List[SweepRow]) -> str:
    """JSON array of row objects with the CSV field names"""
    records = []
    for row in rows:
        record = row.model_dump(include=set(SWEEP_COLUMNS))
        records.append({column: record[column] for column in SWEEP_COLUMNS})
    return json.dumps(records, indent=2) + "\n"


def render(rows: List[SweepRow], output_format: str) -> str:
    """Render rows in the requested format"""
    if output_format == "json":
        return emit_json(rows)
    return emit_csv(rows)


def parse_spec(data: dict) -> ExperimentSpec:
    """Validate a dict into an ExperimentSpec, reporting the first offending field"""
    try:
        return ExperimentSpec.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "config"
        raise ValidationException(field, error["msg"])
