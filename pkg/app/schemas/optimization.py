"""Optimization schemas"""

from pydantic import BaseModel, Field
from typing import List, Optional

from app.caching.config import caching_config


class OptimResult(BaseModel):
    """Solution of the redundancy problem"""
    eta_opt: float = Field(ge=0.0, le=1.0)
    r_opt: int = Field(ge=0)
    cost_opt: float
    iterations_run: int
    evaluations: int
    method: str
    trace: Optional[List[float]] = None


class InstanceRequest(BaseModel):
    """Network instance for a single solve"""
    bs_count: int = Field(default=caching_config.bs_count, ge=1)
    cache_size: int = Field(default=caching_config.cache_size, ge=1)
    file_count: int = Field(default=caching_config.file_count, ge=1)
    exponent: float = Field(default=caching_config.zipf_exponent, ge=0.0)
    alpha: float = Field(default=caching_config.alpha, ge=0.0)
    mu_br: float = Field(default=caching_config.mu_br, ge=1.0)
    mode: str = caching_config.accounting_mode


class OptimizeRequest(InstanceRequest):
    """PSO request"""
    preset: str = "literal"
    seed: int = caching_config.seed
    include_trace: bool = False


class CostPointResponse(BaseModel):
    """One point of the cost curve"""
    redundant_count: int
    eta: float
    ran: float
    backhaul: float
    total: float


class OracleResponse(BaseModel):
    """Exhaustive solve with the full curve"""
    curve: List[CostPointResponse]
    infeasible: List[int]
    result: OptimResult
