"""
FastAPI error handlers for END Optimizer.
"""

import logging

from fastapi import Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from src.shared.exceptions import (
    BusinessRuleViolationError,
    EndOptimizerException,
    EntityNotFoundError,
    IncompatibleExperimentError,
    ScenarioGenerationError,
    ValidationError,
)

logger = logging.getLogger(__name__)


def status_code_for(exc: EndOptimizerException) -> int:
    """HTTP status for a package exception."""
    if isinstance(exc, EntityNotFoundError):
        return 404
    if isinstance(exc, (ValidationError, ScenarioGenerationError)):
        return 400
    if isinstance(exc, (BusinessRuleViolationError, IncompatibleExperimentError)):
        return 409
    return 500


async def end_optimizer_exception_handler(request: Request, exc: EndOptimizerException) -> JSONResponse:
    """Handle END Optimizer exceptions."""
    status_code = status_code_for(exc)
    if status_code >= 500:
        logger.error("%s on %s: %s", exc.__class__.__name__, request.url.path, exc.message)

    return JSONResponse(
        status_code=status_code,
        content={
            "error": exc.__class__.__name__,
            "message": exc.message,
            "details": exc.details
        }
    )


async def validation_exception_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
    """Handle Pydantic validation errors."""
    return JSONResponse(
        status_code=422,
        content={
            "error": "ValidationError",
            "message": "Request validation failed",
            "details": jsonable_errors(exc)
        }
    )


async def http_exception_handler(request: Request, exc: StarletteHTTPException) -> JSONResponse:
    """Handle HTTP exceptions."""
    return JSONResponse(
        status_code=exc.status_code,
        content={
            "error": "HTTPException",
            "message": exc.detail,
            "details": None
        }
    )


async def general_exception_handler(request: Request, exc: Exception) -> JSONResponse:
    """Handle general exceptions."""
    logger.exception("Unhandled error on %s", request.url.path)
    return JSONResponse(
        status_code=500,
        content={
            "error": "InternalServerError",
            "message": "An unexpected error occurred",
            "details": str(exc)
        }
    )


def jsonable_errors(exc: RequestValidationError) -> list:
    # ctx may hold the raised ValueError itself
    return [{key: value for key, value in error.items() if key != "ctx"} for error in exc.errors()]
