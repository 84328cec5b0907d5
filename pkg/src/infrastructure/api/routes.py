"""
FastAPI routes for END Optimizer.
"""

from fastapi import APIRouter

from .designs import router as designs_router
from .experiments import router as experiments_router

# Create main API router
api_router = APIRouter()


@api_router.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "service": "END Optimizer API"}


api_router.include_router(designs_router, prefix="/designs", tags=["designs"])
api_router.include_router(experiments_router, prefix="/experiments", tags=["experiments"])

# Exception handlers are added to the main app in main.py
