"""
Experiment DTOs for Application Layer.
"""

from datetime import datetime
from typing import List, Optional
from uuid import UUID

from pydantic import BaseModel, Field, field_validator

from src.application.dtos.scenario_dto import ScenarioConfig
from src.domain.value_objects.design_mode import AlgorithmKind, ExperimentDesignMode


class StopRuleDTO(BaseModel):
    """DTO for the stopping rule."""
    max_iterations: int = Field(default=20000, ge=0, le=10_000_000, description="Iteration cap")
    merit_threshold: Optional[float] = Field(default=1e-2, gt=0, description="Stop once the merit drops below")
    trace_every: int = Field(default=1, ge=1, description="Record every n-th iteration")


class AlgorithmParametersDTO(BaseModel):
    """DTO for algorithm parameters."""
    alpha: float = Field(default=0.5, gt=0, lt=1, description="ADMM relaxation")
    rho: float = Field(default=1.0, gt=0, description="ADMM penalty")
    gamma: Optional[float] = Field(default=None, gt=0, description="AugDGM step, 0.9/L when omitted")
    step_scale: float = Field(default=1.0, gt=0, description="Push-sum step scale s in s·k^-0.51")
    clip: Optional[float] = Field(default=None, gt=0, description="Push-sum per-block gradient clipping")


class RunRequestDTO(BaseModel):
    """DTO for running one experiment."""
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig, description="Scenario to generate")
    algorithm: AlgorithmKind = Field(default=AlgorithmKind.PUSH_SUM, description="Algorithm")
    design_mode: ExperimentDesignMode = Field(default=ExperimentDesignMode.CUSTOMIZED, description="Design mode")
    symmetrize: bool = Field(default=False, description="Symmetrize the communication graph for admm/augdgm")
    stop: StopRuleDTO = Field(default_factory=StopRuleDTO, description="Stopping rule")
    parameters: AlgorithmParametersDTO = Field(default_factory=AlgorithmParametersDTO, description="Algorithm parameters")


class TraceRowDTO(BaseModel):
    """DTO for one trace row."""
    k: int = Field(..., description="Iteration")
    merit: float = Field(..., description="Merit value")
    consensus_residual: float = Field(..., description="‖Π_⊥ y‖")
    cum_cost: float = Field(..., description="Cumulative broadcasts")
    wall_time: float = Field(..., description="Seconds since start")

    class Config:
        """Enables to create instances from domain objects."""
        from_attributes = True


class RunSummaryDTO(BaseModel):
    """DTO for a run summary."""
    iterations: int = Field(..., description="Iterations performed")
    iterations_to_threshold: Optional[int] = Field(None, description="First iteration below the threshold")
    total_cost: float = Field(..., description="Broadcasts spent")
    memory: int = Field(..., description="Stored scalars")
    final_merit: float = Field(..., description="Merit at the last iteration")
    symmetrized: bool = Field(..., description="Whether one-way links were dropped")
    seed: Optional[int] = Field(None, description="Seed of the scenario draw")
    generator: str = Field(..., description="Random generator")

    class Config:
        """Enables to create instances from domain objects."""
        from_attributes = True


class RunTraceDTO(BaseModel):
    """DTO for a finished run."""
    run_id: UUID = Field(..., description="Stored run ID")
    scenario: str = Field(..., description="Scenario label")
    algorithm: AlgorithmKind = Field(..., description="Algorithm")
    design_mode: ExperimentDesignMode = Field(..., description="Design mode")
    rows: List[TraceRowDTO] = Field(..., description="Trace rows")
    summary: RunSummaryDTO = Field(..., description="Run summary")


class RunRecordResponseDTO(BaseModel):
    """DTO for a stored run summary."""
    run_id: UUID = Field(..., description="Run ID")
    scenario: str = Field(..., description="Scenario label")
    seed: int = Field(..., description="Seed")
    algorithm: AlgorithmKind = Field(..., description="Algorithm")
    design_mode: ExperimentDesignMode = Field(..., description="Design mode")
    iterations: int = Field(..., description="Iterations performed")
    iterations_to_threshold: Optional[int] = Field(None, description="First iteration below the threshold")
    total_cost: float = Field(..., description="Broadcasts spent")
    memory: int = Field(..., description="Stored scalars")
    final_merit: float = Field(..., description="Final merit")
    symmetrized: bool = Field(..., description="Whether one-way links were dropped")
    created_at: datetime = Field(..., description="Creation timestamp")


class RunRecordListResponseDTO(BaseModel):
    """DTO for stored run summaries."""
    runs: List[RunRecordResponseDTO] = Field(..., description="Run summaries")
    total: int = Field(..., description="Total number of stored runs")
    page: int = Field(..., description="Current page")
    size: int = Field(..., description="Page size")


class SweepRequestDTO(BaseModel):
    """DTO for a grid of runs over seeds, radii, modes and algorithms."""
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig, description="Base scenario")
    seeds: List[int] = Field(default_factory=lambda: [0], min_length=1, description="Seeds")
    comm_radius_mins: List[float] = Field(default_factory=list, description="Minimum comm radii, base value when empty")
    design_modes: List[ExperimentDesignMode] = Field(
        default_factory=lambda: [ExperimentDesignMode.STANDARD, ExperimentDesignMode.CUSTOMIZED],
        min_length=1,
        description="Design modes",
    )
    algorithms: List[AlgorithmKind] = Field(
        default_factory=lambda: [AlgorithmKind.PUSH_SUM], min_length=1, description="Algorithms"
    )
    symmetrize: bool = Field(default=False, description="Symmetrize for admm/augdgm")
    stop: StopRuleDTO = Field(default_factory=StopRuleDTO, description="Stopping rule")
    parameters: AlgorithmParametersDTO = Field(default_factory=AlgorithmParametersDTO, description="Algorithm parameters")
    workers: int = Field(default=1, ge=1, le=64, description="Parallel cells")
    out_dir: Optional[str] = Field(None, description="Directory for per-cell CSV traces and summary.csv")

    @field_validator("seeds")
    @classmethod
    def seeds_are_unsigned(cls, seeds: List[int]) -> List[int]:
        if any(seed < 0 or seed >= 2 ** 64 for seed in seeds):
            raise ValueError("seeds must be unsigned 64-bit integers")
        return seeds


class SweepCellDTO(BaseModel):
    """DTO for one sweep cell outcome."""
    scenario: str = Field(..., description="Scenario label")
    seed: int = Field(..., description="Requested seed")
    comm_radius_min: float = Field(..., description="Minimum comm radius")
    algorithm: AlgorithmKind = Field(..., description="Algorithm")
    design_mode: ExperimentDesignMode = Field(..., description="Design mode")
    summary: Optional[RunSummaryDTO] = Field(None, description="Run summary, absent on failure")
    trace_path: Optional[str] = Field(None, description="CSV trace written for the cell")
    error: Optional[str] = Field(None, description="Failure message")


class SweepResponseDTO(BaseModel):
    """DTO for a finished sweep."""
    cells: List[SweepCellDTO] = Field(..., description="Cells in grid order")
    summary_path: Optional[str] = Field(None, description="summary.csv location")
    failed: int = Field(..., description="Cells that raised")
