"""Redundancy-ratio optimization: exhaustive oracle and adapted PSO"""

from dataclasses import dataclass, replace
from typing import Dict, List, Optional
import logging
import math
import time

import numpy as np

from app.caching.config import caching_config
from app.caching.cost import CostParams, argmin_point, cost_curve, total_cost
from app.caching.layout import LayoutParams, is_feasible
from app.caching.popularity import Catalog
from app.exceptions import OptimizationException, ValidationException
from app.schemas.optimization import OptimResult

logger = logging.getLogger(__name__)

# Absorbs representation error in eta * M before flooring
FLOOR_EPS = 1e-9


@dataclass(frozen=True)
class PsoConfig:
    """
    Swarm parameters.

    Defaults are the literal swarm settings, including the tiny
    velocity bound and the inertia w(t) = 0.9 + 0.5 t/T that grows past 1.
    """

    swarm_size: int = 200
    max_iters: int = 100
    c1: float = 0.1
    c2: float = 10.0
    v_max: float = 0.0001
    v_init_half_range: float = 0.01
    inertia_base: float = 0.9
    inertia_slope: float = 0.5
    stall_window: int = caching_config.stall_window
    seed: int = caching_config.seed

    def __post_init__(self):
        for name in ("swarm_size", "max_iters", "stall_window"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValidationException(name, f"must be a positive integer (got {value!r})")
        for name in ("v_max", "v_init_half_range"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValidationException(name, f"must be a positive number (got {value!r})")
        for name in ("c1", "c2", "inertia_base", "inertia_slope"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationException(name, "must be finite")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise ValidationException("seed", f"must be an integer (got {self.seed!r})")

    def inertia(self, t: int) -> float:
        """Inertia weight at iteration t (1-based)"""
        return self.inertia_base + self.inertia_slope * t / self.max_iters

    def with_seed(self, seed: int) -> "PsoConfig":
        return replace(self, seed=seed)


PRESETS: Dict[str, PsoConfig] = {
    "literal": PsoConfig(),
    "practical": PsoConfig(v_max=0.1, c1=2.0, c2=2.0, inertia_base=0.9, inertia_slope=-0.5),
}


def get_preset(name: str, seed: Optional[int] = None) -> PsoConfig:
    """Named preset, optionally reseeded"""
    key = name.strip().lower().replace("pso_", "")
    if key not in PRESETS:
        raise ValidationException("preset", f"unknown preset {name!r} (choose from {', '.join(PRESETS)})")
    cfg = PRESETS[key]
    return cfg.with_seed(seed) if seed is not None else cfg


def ratio_to_redundancy(eta: float, cache_size: int) -> int:
    """R = floor(eta * M), clamped to [0, M]"""
    return min(max(int(math.floor(eta * cache_size + FLOOR_EPS)), 0), cache_size)


def _check_eta(eta: float) -> float:
    if not isinstance(eta, (int, float, np.floating)) or not 0.0 <= eta <= 1.0:
        raise ValidationException("eta", f"must lie in [0, 1] (got {eta!r})")
    return float(eta)


def objective(eta: float, bs_count: int, cache_size: int, cat: Catalog, c: CostParams) -> float:
    """
    Total cost of the relaxed problem at ratio eta.

    Infeasible layouts (more distinct ranks than files) evaluate to +inf.
    """
    eta = _check_eta(eta)
    p = LayoutParams(bs_count, cache_size, ratio_to_redundancy(eta, cache_size))
    if not is_feasible(p, cat):
        return math.inf
    return total_cost(p, cat, c)


class RedundancyObjective:
    """
    Objective tabulated over R = 0..M.

    The relaxed cost depends on eta only through floor(eta * M), so the
    M + 1 values are computed once and swarm evaluations become lookups.
    """

    def __init__(self, bs_count: int, cache_size: int, cat: Catalog, c: CostParams):
        self.bs_count = bs_count
        self.cache_size = cache_size
        self.catalog = cat
        self.costs = c
        table = np.full(cache_size + 1, np.inf)
        for r in range(cache_size + 1):
            p = LayoutParams(bs_count, cache_size, r)
            if is_feasible(p, cat):
                table[r] = total_cost(p, cat, c)
        self.table = table
        self.evaluations = 0

    def redundancy(self, etas: np.ndarray) -> np.ndarray:
        r = np.floor(np.asarray(etas, dtype=np.float64) * self.cache_size + FLOOR_EPS).astype(np.int64)
        return np.clip(r, 0, self.cache_size)

    def __call__(self, etas: np.ndarray) -> np.ndarray:
        etas = np.asarray(etas, dtype=np.float64)
        self.evaluations += etas.size
        return self.table[self.redundancy(etas)]


def exhaustive_oracle(bs_count: int, cache_size: int, cat: Catalog, c: CostParams) -> OptimResult:
    """
    Exact solver: evaluate every feasible R in 0..M.

    Ties resolve to the smallest R.
    """
    curve = cost_curve(bs_count, cache_size, cat, c)
    best = argmin_point(curve.points)
    if best is None:
        raise OptimizationException(
            f"No feasible redundancy level for N={bs_count}, M={cache_size}, F={cat.file_count}"
        )

    logger.info(
        f"Oracle N={bs_count}, M={cache_size}, F={cat.file_count}, s={cat.exponent}: "
        f"R_opt={best.redundant_count}, cost={best.total:.6g}"
    )
    return OptimResult(
        eta_opt=best.redundant_count / cache_size,
        r_opt=best.redundant_count,
        cost_opt=best.total,
        iterations_run=1,
        evaluations=len(curve.points),
        method="oracle",
        trace=None,
    )


class ParticleSwarm:
    """
    One-dimensional swarm over eta in [0, 1].

    Random draws come from a single generator in a fixed order: initial
    positions, initial velocities, then one (m, 2) block per iteration.
    """

    def __init__(self, objective_fn: RedundancyObjective, cfg: PsoConfig):
        self.objective = objective_fn
        self.cfg = cfg
        self.rng = np.random.default_rng(cfg.seed)

        m = cfg.swarm_size
        half = cfg.v_init_half_range
        self.positions = self.rng.random(m)
        self.velocities = self.rng.random(m) * 2 * half - half
        self.pbest = np.zeros(m)
        self.pbest_cost = np.full(m, np.inf)
        self.gbest: Optional[float] = None
        self.gbest_cost = math.inf

        self.iteration = 0
        self.stall = 0
        self.trace: List[float] = []

    @property
    def finished(self) -> bool:
        return self.iteration >= self.cfg.max_iters or self.stall >= self.cfg.stall_window

    def step(self) -> bool:
        """
        Run one iteration: evaluate, update bests, move particles.

        Returns:
            True if the global best improved
        """
        cfg = self.cfg
        self.iteration += 1
        t = self.iteration

        costs = self.objective(self.positions)
        better = costs < self.pbest_cost
        self.pbest_cost = np.where(better, costs, self.pbest_cost)
        self.pbest = np.where(better, self.positions, self.pbest)

        improved = False
        leader = int(np.argmin(self.pbest_cost))
        if self.gbest_cost > self.pbest_cost[leader]:
            self.gbest_cost = float(self.pbest_cost[leader])
            self.gbest = float(self.pbest[leader])
            improved = True
        self.stall = 0 if improved else self.stall + 1

        u = self.rng.random((cfg.swarm_size, 2))
        social = (self.gbest - self.positions) if self.gbest is not None else 0.0
        velocities = (
            cfg.inertia(t) * self.velocities
            + cfg.c1 * u[:, 0] * (self.pbest - self.positions)
            + cfg.c2 * u[:, 1] * social
        )
        self.velocities = np.clip(velocities, -cfg.v_max, cfg.v_max)
        self.positions = np.clip(self.positions + self.velocities, 0.0, 1.0)

        self.trace.append(self.gbest_cost)
        logger.debug(f"PSO iter {t}: gbest={self.gbest}, cost={self.gbest_cost:.6g}, stall={self.stall}")
        return improved


def pso_optimize(
    bs_count: int,
    cache_size: int,
    cat: Catalog,
    c: CostParams,
    cfg: Optional[PsoConfig] = None,
    record_trace: bool = True,
) -> OptimResult:
    """
    Adapted particle swarm search over the relaxed ratio eta.

    Stops after cfg.max_iters iterations or once the global best has not
    improved for cfg.stall_window iterations. Deterministic given cfg.seed.
    """
    cfg = cfg or PsoConfig()
    start = time.time()

    objective_fn = RedundancyObjective(bs_count, cache_size, cat, c)
    swarm = ParticleSwarm(objective_fn, cfg)
    while not swarm.finished:
        swarm.step()

    if swarm.gbest is None:
        raise OptimizationException(
            f"No particle reached a feasible redundancy level for N={bs_count}, M={cache_size}, F={cat.file_count}"
        )

    r_opt = ratio_to_redundancy(swarm.gbest, cache_size)
    elapsed_ms = int((time.time() - start) * 1000)
    logger.info(
        f"PSO seed={cfg.seed}: eta={swarm.gbest:.6f}, R_opt={r_opt}, cost={swarm.gbest_cost:.6g} "
        f"after {swarm.iteration} iterations ({elapsed_ms}ms)"
    )
    return OptimResult(
        eta_opt=swarm.gbest,
        r_opt=r_opt,
        cost_opt=swarm.gbest_cost,
        iterations_run=swarm.iteration,
        evaluations=objective_fn.evaluations,
        method="pso",
        trace=list(swarm.trace) if record_trace else None,
    )
