"""
Experiment API endpoints.
"""

from uuid import UUID

from fastapi import APIRouter, Depends, Query, status

from src.application.dtos.experiment_dto import (
    RunRecordListResponseDTO,
    RunRecordResponseDTO,
    RunRequestDTO,
    RunTraceDTO,
    SweepRequestDTO,
    SweepResponseDTO,
)
from src.application.use_cases.experiment_use_cases import ExperimentUseCases
from src.application.use_cases.sweep_use_cases import SweepUseCases
from src.infrastructure.api.dependencies import get_experiment_use_cases, get_sweep_use_cases

router = APIRouter()


@router.post("/run", response_model=RunTraceDTO, status_code=status.HTTP_201_CREATED)
async def run_experiment(
    request: RunRequestDTO,
    experiment_use_cases: ExperimentUseCases = Depends(get_experiment_use_cases)
):
    """Run one experiment and store its summary."""
    return await experiment_use_cases.run_experiment(request)


@router.post("/sweep", response_model=SweepResponseDTO, status_code=status.HTTP_201_CREATED)
async def run_sweep(
    request: SweepRequestDTO,
    sweep_use_cases: SweepUseCases = Depends(get_sweep_use_cases)
):
    """Run a grid of experiments."""
    return await sweep_use_cases.run_sweep(request)


@router.get("/", response_model=RunRecordListResponseDTO)
async def list_runs(
    limit: int = Query(default=20, ge=1, le=100),
    offset: int = Query(default=0, ge=0),
    experiment_use_cases: ExperimentUseCases = Depends(get_experiment_use_cases)
):
    """List stored run summaries."""
    return await experiment_use_cases.list_runs(limit=limit, offset=offset)


@router.get("/{run_id}", response_model=RunRecordResponseDTO)
async def get_run(
    run_id: UUID,
    experiment_use_cases: ExperimentUseCases = Depends(get_experiment_use_cases)
):
    """Get stored run summary by ID."""
    return await experiment_use_cases.get_run_by_id(run_id)


@router.delete("/{run_id}", status_code=status.HTTP_204_NO_CONTENT)
async def delete_run(
    run_id: UUID,
    experiment_use_cases: ExperimentUseCases = Depends(get_experiment_use_cases)
):
    """Delete stored run summary."""
    await experiment_use_cases.delete_run(run_id)
