"""Monte-Carlo simulation schemas"""

from pydantic import BaseModel, Field
from typing import List, Optional, Tuple

from app.caching.config import caching_config
from app.schemas.optimization import InstanceRequest


class TrialResult(BaseModel):
    """Outcome of one simulated request stream"""
    n_bs: int
    redundant_count: int
    requests: int
    empirical_cost_per_request: float
    empirical_ran_fraction: float
    empirical_backhaul_fraction: float
    local_hit_fraction: float
    analytic_cost_per_request: float
    analytic_local_hit_fraction: float
    std_error: float
    bs_positions: Optional[List[Tuple[float, float]]] = None

    @property
    def z_score(self) -> float:
        """Standardized gap between empirical and analytic cost"""
        gap = self.empirical_cost_per_request - self.analytic_cost_per_request
        if self.std_error == 0:
            return 0.0 if gap == 0 else float("inf")
        return gap / self.std_error


class ValidationRow(BaseModel):
    """Pooled comparison for one redundancy level"""
    redundant_count: int
    feasible: bool
    trials: int = 0
    skipped_trials: int = 0
    analytic: Optional[float] = None
    empirical: Optional[float] = None
    std_error: Optional[float] = None
    z_score: Optional[float] = None
    passed: bool = False
    note: Optional[str] = None
    bs_counts: List[int] = Field(default_factory=list)
    bs_positions: Optional[List[List[Tuple[float, float]]]] = None


class ValidationReport(BaseModel):
    """Model validation summary"""
    rows: List[ValidationRow]
    z_threshold: float
    passed: bool
    evaluated: int
    failed: int
    infeasible: int


class SimulateRequest(InstanceRequest):
    """Monte-Carlo validation request"""
    redundant_counts: Optional[List[int]] = None
    requests_per_trial: int = Field(default=100_000, ge=1)
    trials: int = Field(default=5, ge=1)
    ppp: bool = False
    radius: float = Field(default=caching_config.ppp_radius, gt=0.0)
    density: float = Field(default=caching_config.ppp_density, gt=0.0)
    seed: int = caching_config.seed
    include_positions: bool = False
