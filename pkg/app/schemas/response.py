"""Generic response schemas"""

from pydantic import BaseModel, Field
from typing import Optional
from datetime import datetime, timezone


class ErrorResponse(BaseModel):
    """Error response schema"""
    error: str
    detail: str
    field: Optional[str] = None


class HealthResponse(BaseModel):
    """Health check response schema"""
    status: str
    version: str
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    dependencies: dict
