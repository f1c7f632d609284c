"""Parameter sweep endpoint"""

from fastapi import APIRouter
from typing import List
import logging

from app.schemas.experiment import ExperimentSpec, SweepRow
from app.services.experiment_service import run_sweep

router = APIRouter()
logger = logging.getLogger(__name__)


@router.post("/sweep", response_model=List[SweepRow])
def sweep(spec: ExperimentSpec):
    """Run a sweep; output/format fields are ignored, rows are returned as JSON"""
    logger.info(f"Sweep request: axis={spec.axis}, {len(spec.values)} values, optimizer={spec.optimizer}")
    return run_sweep(spec)
