"""
END Optimizer - Main Application Entry Point

FastAPI application with Hexagonal Architecture for distributed optimization
with customized estimate and design graphs.
"""

import logging
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from starlette.exceptions import HTTPException as StarletteHTTPException

from src.infrastructure.api.error_handlers import (
    end_optimizer_exception_handler,
    general_exception_handler,
    http_exception_handler,
    validation_exception_handler,
)
from src.infrastructure.api.routes import api_router
from src.infrastructure.database.connection import init_database
from src.shared.config import settings
from src.shared.exceptions import EndOptimizerException
from src.shared.logging_config import configure_logging

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Create run tables and the results directory before serving."""
    await init_database()
    Path(settings.results_dir).mkdir(parents=True, exist_ok=True)
    logger.info("%s %s started", settings.app_name, settings.app_version)
    yield
    logger.info("%s stopped", settings.app_name)


def create_app() -> FastAPI:
    """Create and configure FastAPI application."""
    configure_logging(settings)

    app = FastAPI(
        title=settings.app_name,
        description="Distributed optimization with customized estimate and design graphs",
        version=settings.app_version,
        lifespan=lifespan,
    )

    app.include_router(api_router, prefix="/api/v1")

    app.add_exception_handler(EndOptimizerException, end_optimizer_exception_handler)
    app.add_exception_handler(RequestValidationError, validation_exception_handler)
    app.add_exception_handler(StarletteHTTPException, http_exception_handler)
    app.add_exception_handler(Exception, general_exception_handler)

    return app


app = create_app()


@app.get("/")
async def root():
    """Service banner."""
    return {
        "message": f"{settings.app_name} API",
        "version": settings.app_version,
        "docs": "/docs",
        "algorithms": ["push_sum", "augdgm", "admm"],
    }


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn

    uvicorn.run("main:app", host=settings.host, port=settings.port, reload=settings.debug)
