"""Monte-Carlo validation of the analytic cost model"""

from dataclasses import dataclass
from typing import List, Optional, Sequence
import logging
import math
import time

import numpy as np

from app.caching.config import caching_config
from app.caching.cost import AccountingMode, CostParams, total_cost
from app.caching.layout import (
    REDUNDANT,
    UNCACHED,
    LayoutParams,
    build_layout,
    check_feasible,
    rank_owners,
    redundant_mass,
    specific_mass,
)
from app.caching.popularity import Catalog, sample_ranks
from app.exceptions import InfeasibleLayoutException, SimulationException, ValidationException
from app.schemas.simulation import TrialResult, ValidationReport, ValidationRow

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimConfig:
    """Service disk, BS density and request budget of a Monte-Carlo run"""

    radius: float = caching_config.ppp_radius
    density: float = caching_config.ppp_density
    fixed_bs_count: Optional[int] = None
    requests_per_trial: int = caching_config.sim_requests
    trials: int = caching_config.sim_trials
    seed: int = caching_config.seed
    record_positions: bool = False

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius <= 0:
            raise ValidationException("radius", f"must be positive (got {self.radius!r})")
        if not math.isfinite(self.density) or self.density <= 0:
            raise ValidationException("density", f"must be positive (got {self.density!r})")
        if self.fixed_bs_count is not None and self.fixed_bs_count < 1:
            raise ValidationException("fixed_bs_count", f"must be >= 1 (got {self.fixed_bs_count})")
        if self.requests_per_trial < 1:
            raise ValidationException("requests_per_trial", f"must be >= 1 (got {self.requests_per_trial})")
        if self.trials < 1:
            raise ValidationException("trials", f"must be >= 1 (got {self.trials})")

    @property
    def expected_bs_count(self) -> float:
        """Poisson mean lambda * pi * r^2"""
        return self.density * math.pi * self.radius ** 2


def truncated_poisson_mean(mu: float) -> float:
    """Mean of a Poisson(mu) variable conditioned on being >= 1"""
    return mu / (1.0 - math.exp(-mu))


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Independent generator for one trial, derived from (seed, trial index)"""
    return np.random.default_rng([seed, trial_index])


def sample_bs_count(cfg: SimConfig, rng: np.random.Generator) -> int:
    """Number of BSs in the disk: Poisson draw resampled until >= 1, or the fixed override"""
    if cfg.fixed_bs_count is not None:
        return cfg.fixed_bs_count
    mu = cfg.expected_bs_count
    while True:
        n = int(rng.poisson(mu))
        if n >= 1:
            return n


def sample_bs_positions(n: int, cfg: SimConfig, rng: np.random.Generator) -> np.ndarray:
    """Uniform BS coordinates in the disk, shape (n, 2); reporting only, costs ignore them"""
    radii = cfg.radius * np.sqrt(rng.random(n))
    angles = 2 * math.pi * rng.random(n)
    return np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))


def run_trial(
    bs_count: int,
    cache_size: int,
    redundant_count: int,
    cat: Catalog,
    c: CostParams,
    requests: int,
    rng: np.random.Generator,
) -> TrialResult:
    """
    Simulate one request stream against a static layout.

    Each request arrives at a uniformly chosen BS and asks for a Zipf rank.
    It costs 0 when that BS holds the file, alpha when another BS does and
    alpha * mu_BR when only the core network has it.
    """
    if c.mode is not AccountingMode.PER_REQUEST:
        raise SimulationException(
            f"Simulation supports only the per_request accounting mode (got {c.mode.value})"
        )
    if requests < 1:
        raise ValidationException("requests", f"must be >= 1 (got {requests})")

    p = LayoutParams(bs_count, cache_size, redundant_count)
    check_feasible(p, cat)
    owners = rank_owners(build_layout(p), cat.file_count)

    stations = rng.integers(1, bs_count + 1, size=requests)
    ranks = sample_ranks(cat, rng.random(requests))

    owner = owners[ranks]
    local = (owner == REDUNDANT) | (owner == stations)
    backhaul = owner == UNCACHED
    ran = ~(local | backhaul)

    charges = np.where(backhaul, c.beta, np.where(ran, c.alpha, 0.0))
    mean_cost = float(charges.mean())
    std_error = float(charges.std(ddof=1) / math.sqrt(requests)) if requests > 1 else 0.0

    specific_total = sum(specific_mass(j, p, cat) for j in range(1, bs_count + 1))
    return TrialResult(
        n_bs=bs_count,
        redundant_count=redundant_count,
        requests=requests,
        empirical_cost_per_request=mean_cost,
        empirical_ran_fraction=int(ran.sum()) / requests,
        empirical_backhaul_fraction=int(backhaul.sum()) / requests,
        local_hit_fraction=int(local.sum()) / requests,
        analytic_cost_per_request=total_cost(p, cat, c),
        analytic_local_hit_fraction=redundant_mass(p, cat) + specific_total / bs_count,
        std_error=std_error,
    )


def run_trials(
    cfg: SimConfig,
    cache_size: int,
    redundant_count: int,
    cat: Catalog,
    c: CostParams,
) -> List[TrialResult]:
    """
    Run cfg.trials independent trials in trial-index order.

    Trial i draws from trial_rng(cfg.seed, i): first its BS count, then its
    request stream, then (if cfg.record_positions) the BS coordinates.
    Trials whose BS count makes the layout infeasible are skipped, so the
    result may hold fewer than cfg.trials entries.

    Raises:
        InfeasibleLayoutException: no trial could run
    """
    results = []
    skipped: Optional[InfeasibleLayoutException] = None
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        n_bs = sample_bs_count(cfg, rng)
        try:
            result = run_trial(n_bs, cache_size, redundant_count, cat, c, cfg.requests_per_trial, rng)
        except InfeasibleLayoutException as e:
            logger.debug(f"Trial {i} skipped: {e}")
            skipped = e
            continue
        if cfg.record_positions:
            positions = sample_bs_positions(n_bs, cfg, rng)
            result.bs_positions = [(float(x), float(y)) for x, y in positions]
        logger.debug(
            f"Trial {i}: N={n_bs}, R={redundant_count}, empirical={result.empirical_cost_per_request:.6g}, "
            f"analytic={result.analytic_cost_per_request:.6g}, z={result.z_score:.2f}"
        )
        results.append(result)

    if not results and skipped is not None:
        raise skipped
    return results


def pool_trials(results: Sequence[TrialResult]) -> dict:
    """
    Average equally sized trials; the pooled standard error combines per-trial errors.

    z_score is None when the pooled standard error is zero but the means differ.
    """
    count = len(results)
    empirical = sum(r.empirical_cost_per_request for r in results) / count
    analytic = sum(r.analytic_cost_per_request for r in results) / count
    std_error = math.sqrt(sum(r.std_error ** 2 for r in results)) / count
    gap = empirical - analytic
    if std_error == 0:
        z_score = 0.0 if gap == 0 else None
    else:
        z_score = gap / std_error
    return {"empirical": empirical, "analytic": analytic, "std_error": std_error, "z_score": z_score}


def validate_model(
    cfg: SimConfig,
    cache_size: int,
    cat: Catalog,
    c: CostParams,
    redundant_counts: Sequence[int],
    z_threshold: float = 3.0,
) -> ValidationReport:
    """
    Compare simulated and analytic per-request cost over a grid of R values.

    A row is infeasible only when none of its trials could run; failures are
    reported, never raised.
    """
    start = time.time()
    rows: List[ValidationRow] = []
    for r in redundant_counts:
        try:
            results = run_trials(cfg, cache_size, r, cat, c)
        except ValidationException as e:
            logger.warning(f"Validation R={r} skipped: {e}")
            rows.append(ValidationRow(redundant_count=r, feasible=False, skipped_trials=cfg.trials, note=str(e)))
            continue

        pooled = pool_trials(results)
        z_score = pooled["z_score"]
        passed = z_score is not None and abs(z_score) <= z_threshold
        if not passed:
            logger.warning(f"Validation R={r} failed: z={z_score}")

        skipped = cfg.trials - len(results)
        note = None
        if skipped:
            note = f"{skipped} of {cfg.trials} trials skipped: too many BSs for F={cat.file_count}"
            logger.info(f"Validation R={r}: {note}")
        rows.append(ValidationRow(
            redundant_count=r,
            feasible=True,
            trials=len(results),
            skipped_trials=skipped,
            passed=passed,
            note=note,
            bs_counts=[result.n_bs for result in results],
            bs_positions=[result.bs_positions for result in results] if cfg.record_positions else None,
            **pooled,
        ))

    evaluated = sum(1 for row in rows if row.feasible)
    failed = sum(1 for row in rows if row.feasible and not row.passed)
    elapsed_ms = int((time.time() - start) * 1000)
    logger.info(f"Validated {evaluated} grid points, {failed} failed ({elapsed_ms}ms)")
    return ValidationReport(
        rows=rows,
        z_threshold=z_threshold,
        passed=failed == 0,
        evaluated=evaluated,
        failed=failed,
        infeasible=len(rows) - evaluated,
    )
