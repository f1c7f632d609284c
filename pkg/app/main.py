"""FastAPI application entry point"""

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from contextlib import asynccontextmanager
import logging

from app import __version__
from app.api.endpoints import experiments, health, optimization, simulation
from app.caching.config import caching_config
from app.config import settings
from app.exceptions import CachingException, ValidationException
from app.schemas.response import ErrorResponse
from app.utils.logger import setup_logging

# Setup logging
setup_logging()
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Application lifespan manager
    - Startup: log the default instance
    - Shutdown: log
    """
    logger.info(f"Starting {settings.APP_NAME}")
    logger.info(f"Environment: {settings.ENVIRONMENT}")
    logger.info(
        f"Default instance: N={caching_config.bs_count}, M={caching_config.cache_size}, "
        f"F={caching_config.file_count}, s={caching_config.zipf_exponent}, "
        f"mu_BR={caching_config.mu_br}, mode={caching_config.accounting_mode}"
    )

    yield

    logger.info(f"Shutting down {settings.APP_NAME}")


# Create FastAPI application
app = FastAPI(
    title=settings.APP_NAME,
    description="Redundancy-ratio planning for cooperative edge caches",
    version=__version__,
    lifespan=lifespan,
    docs_url="/docs" if settings.DEBUG else None,
    redoc_url="/redoc" if settings.DEBUG else None
)

# Include routers
app.include_router(health.router, tags=["health"])
app.include_router(optimization.router, prefix="/api", tags=["optimization"])
app.include_router(simulation.router, prefix="/api", tags=["simulation"])
app.include_router(experiments.router, prefix="/api", tags=["experiments"])


# Exception handlers
@app.exception_handler(ValidationException)
async def validation_exception_handler(request: Request, exc: ValidationException):
    """Invalid model parameters"""
    logger.warning(f"Validation error: {str(exc)}")
    return JSONResponse(
        status_code=422,
        content=ErrorResponse(
            error=exc.__class__.__name__,
            detail=str(exc),
            field=exc.field
        ).model_dump()
    )


@app.exception_handler(CachingException)
async def caching_exception_handler(request: Request, exc: CachingException):
    """Handle custom model exceptions"""
    logger.error(f"Caching exception: {str(exc)}")
    return JSONResponse(
        status_code=500,
        content=ErrorResponse(
            error=exc.__class__.__name__,
            detail=str(exc)
        ).model_dump()
    )


@app.get("/")
async def root():
    """Root endpoint"""
    return {
        "message": f"{settings.APP_NAME} API",
        "version": __version__,
        "environment": settings.ENVIRONMENT,
        "docs": "/docs" if settings.DEBUG else "disabled"
    }


@app.get("/api/info")
async def api_info():
    """API information"""
    return {
        "app_name": settings.APP_NAME,
        "version": __version__,
        "environment": settings.ENVIRONMENT,
        "endpoints": {
            "health": "/health",
            "oracle": "/api/oracle",
            "optimize": "/api/optimize",
            "simulate": "/api/simulate",
            "sweep": "/api/sweep"
        }
    }
