"""Monte-Carlo validation endpoint"""

from fastapi import APIRouter
import logging

from app.caching.cost import AccountingMode, CostParams
from app.caching.popularity import build_catalog
from app.caching.simulator import SimConfig, validate_model
from app.config import settings
from app.exceptions import ValidationException
from app.schemas.simulation import SimulateRequest, ValidationReport

router = APIRouter()
logger = logging.getLogger(__name__)


@router.post("/simulate", response_model=ValidationReport)
def simulate(request: SimulateRequest):
    """Validate the analytic per-request cost against simulated request streams"""
    total_requests = request.requests_per_trial * request.trials
    grid = request.redundant_counts
    if grid is None:
        grid = list(range(request.cache_size + 1))
    if total_requests * max(len(grid), 1) > settings.API_MAX_REQUESTS:
        raise ValidationException(
            "requests_per_trial",
            f"{total_requests} requests x {len(grid)} grid points exceeds the limit of {settings.API_MAX_REQUESTS}"
        )

    cat = build_catalog(request.file_count, request.exponent)
    costs = CostParams(alpha=request.alpha, mu_br=request.mu_br, mode=AccountingMode.parse(request.mode))
    sim_cfg = SimConfig(
        radius=request.radius,
        density=request.density,
        fixed_bs_count=None if request.ppp else request.bs_count,
        requests_per_trial=request.requests_per_trial,
        trials=request.trials,
        seed=request.seed,
        record_positions=request.include_positions,
    )
    return validate_model(sim_cfg, request.cache_size, cat, costs, grid)
