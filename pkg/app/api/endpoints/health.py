"""Health check endpoint"""

from fastapi import APIRouter
import logging

import numpy as np
import pydantic

from app import __version__
from app.caching.popularity import build_catalog
from app.schemas.response import HealthResponse

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get("/health", response_model=HealthResponse)
async def health_check():
    """
    Health check endpoint
    Reports library versions and runs a one-file catalog build as a smoke test
    """
    health_status = {
        "status": "healthy",
        "version": __version__,
        "dependencies": {
            "numpy": np.__version__,
            "pydantic": pydantic.VERSION,
        }
    }

    try:
        build_catalog(1, 0.8)
        health_status["dependencies"]["model"] = "ok"
    except Exception as e:
        health_status["dependencies"]["model"] = f"error: {str(e)}"
        health_status["status"] = "unhealthy"
        logger.error(f"Model smoke test failed: {str(e)}")

    return HealthResponse(**health_status)
