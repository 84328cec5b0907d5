"""
Scenario DTOs for Application Layer.
"""

import math

from pydantic import BaseModel, Field

from src.domain.value_objects.scenario_parameters import ProblemKind, ScenarioParameters

MAX_RADIUS = math.sqrt(2.0)


class ScenarioConfig(BaseModel):
    """DTO describing a random sensor/source scenario."""
    agents: int = Field(default=20, ge=1, le=2000, description="Number of sensors N")
    sources: int = Field(default=8, ge=1, le=2000, description="Number of sources P")
    sensing_radius: float = Field(default=0.2, gt=0, le=MAX_RADIUS, description="Sensing radius r_s")
    comm_radius_min: float = Field(default=0.1, gt=0, le=MAX_RADIUS, description="Minimum communication radius")
    comm_radius_spread: float = Field(default=0.1, ge=0, description="Width of the communication radius draw")
    measurement_size: int = Field(default=10, ge=1, description="Measurements per sensor n_h")
    noise_variance: float = Field(default=0.1, ge=0, description="Measurement noise variance")
    active_fraction: float = Field(default=1.0, gt=0, le=1, description="Fraction of emitting sources (LASSO)")
    problem: ProblemKind = Field(default=ProblemKind.LEAST_SQUARES, description="Estimation problem")
    regularization: float = Field(default=1.0, gt=0, description="l1 weight for LASSO")
    extend_radii: bool = Field(
        default=True, description="Raise radii along a spanning tree when the drawn links are not strongly connected"
    )
    seed: int = Field(default=0, ge=0, lt=2 ** 64, description="Generator seed")

    def to_parameters(self) -> ScenarioParameters:
        """Convert to the domain value object."""
        return ScenarioParameters(**self.model_dump())

    def with_overrides(self, **changes) -> "ScenarioConfig":
        """Copy with the non-None overrides applied and validated."""
        data = self.model_dump()
        data.update({key: value for key, value in changes.items() if value is not None})
        return ScenarioConfig(**data)


class ScenarioSummaryDTO(BaseModel):
    """DTO for a generated scenario."""
    label: str = Field(..., description="Scenario label")
    seed_used: int = Field(..., description="Seed of the accepted draw")
    attempts: int = Field(..., description="Draws until acceptance")
    comm_edges: int = Field(..., description="Directed communication links")
    interference_edges: int = Field(..., description="Sensor/source sensing pairs")
    generator: str = Field(default="PCG64", description="Random generator")
