"""Application configuration"""

from pydantic_settings import BaseSettings
from pydantic import ConfigDict
from functools import lru_cache
from pathlib import Path

# Get the project directory (parent of app directory)
PROJECT_DIR = Path(__file__).parent.parent
ENV_FILE = PROJECT_DIR / ".env"


class Settings(BaseSettings):
    """Application settings"""

    # Application
    APP_NAME: str = "Edge Cache Redundancy Planner"
    ENVIRONMENT: str = "development"
    DEBUG: bool = False

    # Network instance defaults (simulation configuration of the reference scenario)
    DEFAULT_BS_COUNT: int = 6
    DEFAULT_CACHE_SIZE: int = 50
    DEFAULT_FILE_COUNT: int = 500
    DEFAULT_ZIPF_EXPONENT: float = 0.8
    DEFAULT_ALPHA: float = 1.0
    DEFAULT_MU_BR: float = 4.0
    DEFAULT_ACCOUNTING_MODE: str = "per_request"  # "per_request" or "paper_literal"

    # Poisson point process
    PPP_RADIUS: float = 100.0  # meters
    PPP_DENSITY: float = 2e-4  # BSs per square meter

    # Monte-Carlo
    SIM_REQUESTS: int = 1_000_000
    SIM_TRIALS: int = 20

    # Optimizer
    PSO_STALL_WINDOW: int = 20
    DEFAULT_SEED: int = 0

    # HTTP API limits
    API_MAX_REQUESTS: int = 2_000_000

    # Logging
    LOG_LEVEL: str = "INFO"

    model_config = ConfigDict(
        env_file=str(ENV_FILE),
        env_file_encoding='utf-8',
        case_sensitive=True,
        extra="ignore"  # Ignore extra fields in .env
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()


settings = get_settings()
