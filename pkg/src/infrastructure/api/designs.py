"""
Design API endpoints.
"""

from fastapi import APIRouter, Depends

from src.application.dtos.design_dto import DesignRequestDTO, DesignResponseDTO
from src.application.use_cases.design_use_cases import DesignUseCases
from src.infrastructure.api.dependencies import get_design_use_cases

router = APIRouter()


@router.post("/", response_model=DesignResponseDTO)
def create_design(
    request: DesignRequestDTO,
    design_use_cases: DesignUseCases = Depends(get_design_use_cases)
):
    """Synthesize estimate and design graphs for a generated scenario."""
    _, response = design_use_cases.design_for_scenario(request)
    return response
