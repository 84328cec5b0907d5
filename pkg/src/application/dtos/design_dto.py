"""
Design DTOs for Application Layer.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from src.application.dtos.scenario_dto import ScenarioConfig, ScenarioSummaryDTO
from src.domain.value_objects.design_mode import DesignMode, EdgePolicy


class DesignSpecDTO(BaseModel):
    """DTO for the requested design synthesis."""
    mode: DesignMode = Field(default=DesignMode.STANDARD, description="Synthesis mode")
    edge_policy: EdgePolicy = Field(default=EdgePolicy.ALL_AVAILABLE, description="Edges kept in design graphs")
    symmetrize: bool = Field(default=False, description="Keep only bidirectional links before an undirected design")


class DesignRequestDTO(BaseModel):
    """DTO for designing a layout on a generated scenario."""
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig, description="Scenario to generate")
    design: DesignSpecDTO = Field(default_factory=DesignSpecDTO, description="Design specification")


class CostReportDTO(BaseModel):
    """DTO for memory and communication cost of a layout."""
    copies_per_component: Dict[int, int] = Field(..., description="N_p per component (0-based keys)")
    steiner_nodes_per_component: Dict[int, int] = Field(..., description="Copies beyond the interference terminals")
    total_copies: int = Field(..., description="Σ_p N_p")
    total_memory: int = Field(..., description="Stored scalars")
    per_iteration_broadcast_cost: float = Field(..., description="Broadcasts per communication round")

    class Config:
        """Enables to create instances from domain objects."""
        from_attributes = True


class DesignResponseDTO(BaseModel):
    """DTO for a synthesized layout."""
    scenario: Optional[ScenarioSummaryDTO] = Field(None, description="Generated scenario, absent for layout files")
    mode: DesignMode = Field(..., description="Synthesis mode")
    edge_policy: EdgePolicy = Field(..., description="Edge policy")
    symmetrized: bool = Field(..., description="Whether one-way links were dropped")
    cost: CostReportDTO = Field(..., description="Cost report")
    standing_assumption_holds: bool = Field(..., description="Estimate and design graphs are consistent")
    strongly_connected: bool = Field(..., description="Every design graph is strongly connected")
    undirected_connected: bool = Field(..., description="Every design graph is undirected and connected")
    failures: List[str] = Field(default_factory=list, description="Validation findings")
