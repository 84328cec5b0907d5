"""
Scenario parameters value object.
"""

import math
from dataclasses import dataclass
from enum import Enum

from src.shared.exceptions import ValidationError


class ProblemKind(str, Enum):
    """Estimation problem solved by the sensors."""

    LEAST_SQUARES = "ls"
    LASSO = "lasso"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ScenarioParameters:
    """Sensor/source field on the unit square."""
    agents: int = 20
    sources: int = 8
    sensing_radius: float = 0.2
    comm_radius_min: float = 0.1
    comm_radius_spread: float = 0.1
    measurement_size: int = 10
    noise_variance: float = 0.1
    active_fraction: float = 1.0
    problem: ProblemKind = ProblemKind.LEAST_SQUARES
    regularization: float = 1.0
    extend_radii: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.agents < 1 or self.sources < 1:
            raise ValidationError("Scenario needs at least one sensor and one source")
        for name, radius in (("sensing_radius", self.sensing_radius), ("comm_radius_min", self.comm_radius_min)):
            if not 0.0 < radius <= math.sqrt(2.0):
                raise ValidationError(f"{name} must lie in (0, sqrt(2)], got {radius}")
        if self.comm_radius_spread < 0:
            raise ValidationError("comm_radius_spread must be nonnegative")
        if self.measurement_size < 1:
            raise ValidationError("measurement_size must be positive")
        if self.noise_variance < 0:
            raise ValidationError("noise_variance must be nonnegative")
        if not 0.0 < self.active_fraction <= 1.0:
            raise ValidationError("active_fraction must lie in (0, 1]")
        if self.regularization <= 0:
            raise ValidationError("regularization must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError("seed must be an unsigned 64-bit integer")
