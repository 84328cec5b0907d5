"""
Experiment Use Cases for Application Layer.
"""

import logging
from typing import Optional, Tuple
from uuid import UUID

from starlette.concurrency import run_in_threadpool

from src.application.dtos.experiment_dto import (
    AlgorithmParametersDTO,
    RunRecordListResponseDTO,
    RunRecordResponseDTO,
    RunRequestDTO,
    RunSummaryDTO,
    RunTraceDTO,
    StopRuleDTO,
    TraceRowDTO,
)
from src.application.use_cases.design_use_cases import ScenarioUseCases
from src.domain.entities.run_record import RunRecord
from src.domain.entities.scenario import Scenario
from src.domain.repositories.run_repository import RunRepository
from src.domain.services.algorithms.runner import AlgorithmConfig, StopRule
from src.domain.services.experiment import run_experiment
from src.domain.value_objects.design_mode import AlgorithmKind
from src.domain.value_objects.run_trace import RunTrace
from src.shared.config import settings
from src.shared.exceptions import EntityNotFoundError

logger = logging.getLogger(__name__)


def stop_rule(dto: StopRuleDTO) -> StopRule:
    return StopRule(max_iterations=dto.max_iterations, merit_threshold=dto.merit_threshold, trace_every=dto.trace_every)


def algorithm_config(kind: AlgorithmKind, dto: AlgorithmParametersDTO) -> AlgorithmConfig:
    return AlgorithmConfig(
        kind=kind,
        alpha=dto.alpha,
        rho=dto.rho,
        gamma=dto.gamma,
        step_scale=dto.step_scale,
        clip=dto.clip,
        condition_tolerance=settings.numeric_tolerance,
    )


def record_response(record: RunRecord) -> RunRecordResponseDTO:
    return RunRecordResponseDTO(
        run_id=record.id,
        scenario=record.scenario,
        seed=record.seed,
        algorithm=record.algorithm,
        design_mode=record.design_mode,
        iterations=record.iterations,
        iterations_to_threshold=record.iterations_to_threshold,
        total_cost=record.total_cost,
        memory=record.memory,
        final_merit=record.final_merit,
        symmetrized=record.symmetrized,
        created_at=record.created_at,
    )


class ExperimentUseCases:
    """Experiment run use cases implementation."""

    def __init__(self, run_repository: RunRepository, scenario_use_cases: Optional[ScenarioUseCases] = None):
        self._run_repository = run_repository
        self._scenarios = scenario_use_cases or ScenarioUseCases()

    def execute(self, request: RunRequestDTO) -> Tuple[Scenario, RunTrace]:
        """Generate the scenario and run the requested algorithm on it."""
        scenario = self._scenarios.generate(request.scenario)
        trace = run_experiment(
            scenario,
            request.design_mode,
            request.algorithm,
            stop_rule(request.stop),
            symmetrize=request.symmetrize,
            config=algorithm_config(request.algorithm, request.parameters),
            divergence_bound=settings.divergence_bound,
        )
        return scenario, trace

    async def run_experiment(self, request: RunRequestDTO) -> RunTraceDTO:
        """Run one experiment and store its summary."""
        scenario, trace = await run_in_threadpool(self.execute, request)
        record = await self._run_repository.create(
            RunRecord.from_summary(scenario.label(), request.algorithm, request.design_mode, trace.summary)
        )
        logger.info("Stored run %s for %s", record.id, record.scenario)

        return RunTraceDTO(
            run_id=record.id,
            scenario=record.scenario,
            algorithm=request.algorithm,
            design_mode=request.design_mode,
            rows=[TraceRowDTO.model_validate(row) for row in trace.rows],
            summary=RunSummaryDTO.model_validate(trace.summary),
        )

    async def get_run_by_id(self, run_id: UUID) -> RunRecordResponseDTO:
        """Get stored run summary by ID."""
        record = await self._run_repository.get_by_id(run_id)
        if not record:
            raise EntityNotFoundError("Run", str(run_id))
        return record_response(record)

    async def list_runs(self, limit: int = 100, offset: int = 0) -> RunRecordListResponseDTO:
        """List stored run summaries."""
        records = await self._run_repository.list_all(limit=limit, offset=offset)
        total = await self._run_repository.count_all()

        return RunRecordListResponseDTO(
            runs=[record_response(record) for record in records],
            total=total,
            page=(offset // limit) + 1 if limit > 0 else 1,
            size=limit,
        )

    async def delete_run(self, run_id: UUID) -> bool:
        """Delete stored run summary."""
        record = await self._run_repository.get_by_id(run_id)
        if not record:
            raise EntityNotFoundError("Run", str(run_id))

        return await self._run_repository.delete(run_id)
