"""
FastAPI dependencies for END Optimizer.
"""

from typing import Annotated

from fastapi import Depends
from sqlalchemy.ext.asyncio import AsyncSession

from src.application.use_cases.design_use_cases import DesignUseCases, ScenarioUseCases
from src.application.use_cases.experiment_use_cases import ExperimentUseCases
from src.application.use_cases.sweep_use_cases import SweepUseCases
from src.domain.repositories.run_repository import RunRepository
from src.infrastructure.database.connection import get_async_db
from src.infrastructure.database.repositories.run_repository_impl import RunRepositoryImpl


def get_run_repository(db: Annotated[AsyncSession, Depends(get_async_db)]) -> RunRepository:
    """Get run repository."""
    return RunRepositoryImpl(db)


def get_scenario_use_cases() -> ScenarioUseCases:
    """Get scenario use cases."""
    return ScenarioUseCases()


def get_design_use_cases(
    scenario_use_cases: Annotated[ScenarioUseCases, Depends(get_scenario_use_cases)]
) -> DesignUseCases:
    """Get design use cases."""
    return DesignUseCases(scenario_use_cases)


def get_experiment_use_cases(
    run_repo: Annotated[RunRepository, Depends(get_run_repository)],
    scenario_use_cases: Annotated[ScenarioUseCases, Depends(get_scenario_use_cases)],
) -> ExperimentUseCases:
    """Get experiment use cases."""
    return ExperimentUseCases(run_repo, scenario_use_cases)


def get_sweep_use_cases(
    run_repo: Annotated[RunRepository, Depends(get_run_repository)],
    scenario_use_cases: Annotated[ScenarioUseCases, Depends(get_scenario_use_cases)],
) -> SweepUseCases:
    """Get sweep use cases."""
    return SweepUseCases(run_repo, scenario_use_cases)
