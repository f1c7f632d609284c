"""Oracle and PSO endpoints"""

from fastapi import APIRouter
import logging

from app.caching.cost import AccountingMode, CostParams, cost_curve
from app.caching.optimizer import exhaustive_oracle, get_preset, pso_optimize
from app.caching.popularity import build_catalog
from app.schemas.optimization import (
    CostPointResponse,
    InstanceRequest,
    OptimizeRequest,
    OptimResult,
    OracleResponse,
)

router = APIRouter()
logger = logging.getLogger(__name__)


def _instance(request: InstanceRequest):
    cat = build_catalog(request.file_count, request.exponent)
    costs = CostParams(alpha=request.alpha, mu_br=request.mu_br, mode=AccountingMode.parse(request.mode))
    return cat, costs


@router.post("/oracle", response_model=OracleResponse)
def oracle(request: InstanceRequest):
    """Full cost curve and exact optimum of one instance"""
    cat, costs = _instance(request)
    curve = cost_curve(request.bs_count, request.cache_size, cat, costs)
    result = exhaustive_oracle(request.bs_count, request.cache_size, cat, costs)
    return OracleResponse(
        curve=[
            CostPointResponse(
                redundant_count=point.redundant_count,
                eta=point.redundant_count / request.cache_size,
                ran=point.ran,
                backhaul=point.backhaul,
                total=point.total,
            )
            for point in curve.points
        ],
        infeasible=curve.infeasible,
        result=result,
    )


@router.post("/optimize", response_model=OptimResult)
def optimize(request: OptimizeRequest):
    """Particle swarm search with a named preset"""
    cat, costs = _instance(request)
    cfg = get_preset(request.preset, seed=request.seed)
    logger.info(f"Optimize request: N={request.bs_count}, M={request.cache_size}, preset={request.preset}")
    return pso_optimize(request.bs_count, request.cache_size, cat, costs, cfg, record_trace=request.include_trace)
