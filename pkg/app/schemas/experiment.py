"""Experiment (parameter sweep) schemas"""

from pydantic import BaseModel, ConfigDict, Field, field_validator
from typing import List, Literal, Optional

from app.caching.config import caching_config
from app.caching.cost import AccountingMode
from app.exceptions import ValidationException

# Stable output columns, in order
SWEEP_COLUMNS = [
    "axis",
    "eta_opt",
    "r_opt",
    "cost_opt",
    "cost_eta0",
    "cost_eta1",
    "reduction_vs_eta0_pct",
    "reduction_vs_eta1_pct",
    "mode",
    "optimizer",
    "seed",
]

AXIS_ALIASES = {"mu_br": "mu_br", "mu-br": "mu_br", "s": "s", "m": "M", "r": "R"}


class ExperimentSpec(BaseModel):
    """Sweep definition; unknown keys are rejected"""

    model_config = ConfigDict(extra="forbid")

    # Instance
    bs_count: int = Field(default=caching_config.bs_count, ge=1)
    ppp: bool = False
    radius: float = Field(default=caching_config.ppp_radius, gt=0.0)
    density: float = Field(default=caching_config.ppp_density, gt=0.0)
    cache_size: int = Field(default=caching_config.cache_size, ge=1)
    file_count: int = Field(default=caching_config.file_count, ge=1)
    exponent: float = Field(default=caching_config.zipf_exponent, ge=0.0)
    alpha: float = Field(default=caching_config.alpha, ge=0.0)
    mu_br: float = Field(default=caching_config.mu_br, ge=1.0)

    # Sweep
    axis: Literal["mu_br", "s", "M", "R"]
    values: List[float] = Field(min_length=1)
    mode: AccountingMode = AccountingMode.parse(caching_config.accounting_mode)
    optimizer: Literal["oracle", "pso_literal", "pso_practical"] = "oracle"

    # Output
    output: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    seed: int = caching_config.seed

    @field_validator("axis", mode="before")
    @classmethod
    def normalize_axis(cls, value):
        if isinstance(value, str):
            return AXIS_ALIASES.get(value.strip().lower(), value)
        return value

    @field_validator("mode", mode="before")
    @classmethod
    def normalize_mode(cls, value):
        if not isinstance(value, str):
            return value
        try:
            return AccountingMode.parse(value)
        except ValidationException as e:
            raise ValueError(str(e))

    @field_validator("optimizer", mode="before")
    @classmethod
    def normalize_optimizer(cls, value):
        if isinstance(value, str):
            return value.strip().lower().replace("-", "_")
        return value


class SweepRow(BaseModel):
    """One sweep point; reductions are percentages of the baseline cost"""
    axis: float
    eta_opt: Optional[float] = None
    r_opt: Optional[int] = None
    cost_opt: Optional[float] = None
    cost_eta0: Optional[float] = None
    cost_eta1: Optional[float] = None
    reduction_vs_eta0_pct: Optional[float] = None
    reduction_vs_eta1_pct: Optional[float] = None
    mode: str
    optimizer: str
    seed: int

    # Run metadata, not part of the emitted columns
    axis_name: str
    bs_count: int
    cache_size: int
    file_count: int
    note: Optional[str] = None

    @property
    def feasible(self) -> bool:
        return self.cost_opt is not None
