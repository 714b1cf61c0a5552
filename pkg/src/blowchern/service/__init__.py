"""HTTP front end: request/response schemas and the FastAPI application."""

from .app import create_app, expand_lines, run_suite
from .schemas import (
    ComputeRequest,
    ComputeResponse,
    ExpandRequest,
    ExpandResponse,
    HealthResponse,
    ReportModel,
    VerifyRequest,
    VerifyResponse,
)

__all__ = [
    "ComputeRequest",
    "ComputeResponse",
    "ExpandRequest",
    "ExpandResponse",
    "HealthResponse",
    "ReportModel",
    "VerifyRequest",
    "VerifyResponse",
    "create_app",
    "expand_lines",
    "run_suite",
]
