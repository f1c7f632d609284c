"""Caching model configuration"""

from dataclasses import dataclass
from app.config import settings


@dataclass
class CachingConfig:
    """Default network instance and run parameters for the caching model"""

    # Network instance
    bs_count: int = settings.DEFAULT_BS_COUNT
    cache_size: int = settings.DEFAULT_CACHE_SIZE
    file_count: int = settings.DEFAULT_FILE_COUNT
    zipf_exponent: float = settings.DEFAULT_ZIPF_EXPONENT

    # Unit costs
    alpha: float = settings.DEFAULT_ALPHA
    mu_br: float = settings.DEFAULT_MU_BR
    accounting_mode: str = settings.DEFAULT_ACCOUNTING_MODE

    # Poisson point process
    ppp_radius: float = settings.PPP_RADIUS
    ppp_density: float = settings.PPP_DENSITY

    # Monte-Carlo
    sim_requests: int = settings.SIM_REQUESTS
    sim_trials: int = settings.SIM_TRIALS

    # Optimizer
    stall_window: int = settings.PSO_STALL_WINDOW
    seed: int = settings.DEFAULT_SEED


# Global caching config instance
caching_config = CachingConfig()
