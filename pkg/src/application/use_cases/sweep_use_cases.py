"""
Sweep Use Cases for Application Layer.

A sweep runs every (seed, r_c_min, design mode, algorithm) cell of a grid.
Scenarios and their centralized reference are computed once per
(seed, r_c_min) pair and shared by the cells that use them.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from starlette.concurrency import run_in_threadpool

from src.application.dtos.experiment_dto import RunSummaryDTO, SweepCellDTO, SweepRequestDTO, SweepResponseDTO
from src.application.use_cases.design_use_cases import ScenarioUseCases
from src.application.use_cases.experiment_use_cases import algorithm_config, stop_rule
from src.domain.entities.run_record import RunRecord
from src.domain.entities.scenario import Scenario
from src.domain.repositories.run_repository import RunRepository
from src.domain.services.experiment import run_experiment
from src.domain.services.reference_solver import centralized_reference
from src.domain.value_objects.design_mode import AlgorithmKind, ExperimentDesignMode
from src.domain.value_objects.run_trace import RunSummary
from src.infrastructure.serialization.trace_writer import emit_csv, write_summary_csv
from src.shared.config import settings
from src.shared.exceptions import EndOptimizerException

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepCell:
    seed: int
    comm_radius_min: float
    design_mode: ExperimentDesignMode
    algorithm: AlgorithmKind


@dataclass
class CellOutcome:
    cell: SweepCell
    scenario: str
    summary: Optional[RunSummary] = None
    trace_path: Optional[Path] = None
    error: Optional[str] = None


class SweepUseCases:
    """Sweep use cases implementation."""

    def __init__(self, run_repository: Optional[RunRepository] = None, scenario_use_cases: Optional[ScenarioUseCases] = None):
        self._run_repository = run_repository
        self._scenarios = scenario_use_cases or ScenarioUseCases()

    @staticmethod
    def cells(request: SweepRequestDTO) -> List[SweepCell]:
        """Grid cells in seed, radius, mode, algorithm order."""
        radii = request.comm_radius_mins or [request.scenario.comm_radius_min]
        return [
            SweepCell(seed, radius, mode, algorithm)
            for seed in request.seeds
            for radius in radii
            for mode in request.design_modes
            for algorithm in request.algorithms
        ]

    def execute(self, request: SweepRequestDTO) -> List[CellOutcome]:
        """Run every cell on a thread pool and write CSV output when out_dir is set."""
        cells = self.cells(request)
        keys = sorted({(cell.seed, cell.comm_radius_min) for cell in cells})
        out_dir = Path(request.out_dir) if request.out_dir else None
        logger.info("Sweep over %d cells with %d workers", len(cells), request.workers)

        with ThreadPoolExecutor(max_workers=request.workers) as pool:
            prepared = dict(zip(keys, pool.map(lambda key: self._prepare(request, *key), keys)))
            outcomes = list(pool.map(lambda cell: self._run_cell(request, cell, prepared, out_dir), cells))

        if out_dir is not None:
            write_summary_csv([self._summary_row(request, outcome) for outcome in outcomes], out_dir / "summary.csv")
        failed = sum(1 for outcome in outcomes if outcome.error)
        if failed:
            logger.warning("%d of %d sweep cells failed", failed, len(outcomes))
        return outcomes

    async def run_sweep(self, request: SweepRequestDTO) -> SweepResponseDTO:
        """Run the sweep and store one run record per finished cell."""
        outcomes = await run_in_threadpool(self.execute, request)
        if self._run_repository is not None:
            for outcome in outcomes:
                if outcome.summary is not None:
                    await self._run_repository.create(
                        RunRecord.from_summary(
                            outcome.scenario, outcome.cell.algorithm, outcome.cell.design_mode, outcome.summary
                        )
                    )

        out_dir = Path(request.out_dir) if request.out_dir else None
        return SweepResponseDTO(
            cells=[self._cell_dto(outcome) for outcome in outcomes],
            summary_path=str(out_dir / "summary.csv") if out_dir else None,
            failed=sum(1 for outcome in outcomes if outcome.error),
        )

    def _prepare(
        self, request: SweepRequestDTO, seed: int, radius: float
    ) -> Tuple[Optional[Scenario], Optional[np.ndarray], Optional[str]]:
        config = request.scenario.with_overrides(seed=seed, comm_radius_min=radius)
        try:
            scenario = self._scenarios.generate(config)
            y_star, _ = centralized_reference(scenario.problem)
            return scenario, y_star, None
        except EndOptimizerException as e:
            logger.warning("Scenario seed=%d r_c_min=%g failed: %s", seed, radius, e.message)
            return None, None, e.message

    def _run_cell(
        self,
        request: SweepRequestDTO,
        cell: SweepCell,
        prepared: Dict[Tuple[int, float], Tuple[Optional[Scenario], Optional[np.ndarray], Optional[str]]],
        out_dir: Optional[Path],
    ) -> CellOutcome:
        scenario, y_star, error = prepared[(cell.seed, cell.comm_radius_min)]
        if scenario is None:
            label = request.scenario.with_overrides(seed=cell.seed, comm_radius_min=cell.comm_radius_min)
            return CellOutcome(cell, f"{label.problem.value}-seed{cell.seed}-rc{cell.comm_radius_min:g}", error=error)

        label = scenario.label()
        try:
            trace = run_experiment(
                scenario,
                cell.design_mode,
                cell.algorithm,
                stop_rule(request.stop),
                symmetrize=request.symmetrize,
                config=algorithm_config(cell.algorithm, request.parameters),
                y_star=y_star,
                divergence_bound=settings.divergence_bound,
            )
        except EndOptimizerException as e:
            logger.warning("Cell %s %s %s failed: %s", label, cell.algorithm, cell.design_mode, e.message)
            return CellOutcome(cell, label, error=e.message)

        trace_path = None
        if out_dir is not None:
            trace_path = out_dir / f"{label}-{cell.algorithm}-{cell.design_mode}.csv"
            emit_csv(trace, trace_path)
        return CellOutcome(cell, label, summary=trace.summary, trace_path=trace_path)

    @staticmethod
    def _summary_row(request: SweepRequestDTO, outcome: CellOutcome) -> Dict[str, Any]:
        summary = outcome.summary
        return {
            "scenario": outcome.scenario,
            "seed": outcome.cell.seed,
            "agents": request.scenario.agents,
            "sources": request.scenario.sources,
            "sensing_radius": request.scenario.sensing_radius,
            "comm_radius_min": outcome.cell.comm_radius_min,
            "algorithm": str(outcome.cell.algorithm),
            "mode": str(outcome.cell.design_mode),
            "symmetrized": summary.symmetrized if summary else None,
            "iters_to_threshold": summary.iterations_to_threshold if summary else None,
            "total_cost": summary.total_cost if summary else None,
            "memory": summary.memory if summary else None,
            "final_merit": summary.final_merit if summary else None,
        }

    @staticmethod
    def _cell_dto(outcome: CellOutcome) -> SweepCellDTO:
        return SweepCellDTO(
            scenario=outcome.scenario,
            seed=outcome.cell.seed,
            comm_radius_min=outcome.cell.comm_radius_min,
            algorithm=outcome.cell.algorithm,
            design_mode=outcome.cell.design_mode,
            summary=RunSummaryDTO.model_validate(outcome.summary) if outcome.summary else None,
            trace_path=str(outcome.trace_path) if outcome.trace_path else None,
            error=outcome.error,
        )
