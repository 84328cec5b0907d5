"""
Design Use Cases for Application Layer.
"""

import logging
from typing import Optional, Tuple

from src.application.dtos.design_dto import CostReportDTO, DesignRequestDTO, DesignResponseDTO, DesignSpecDTO
from src.application.dtos.scenario_dto import ScenarioConfig, ScenarioSummaryDTO
from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.scenario import Scenario
from src.domain.services.estimate_design import cost_report, synthesize_design
from src.domain.services.scenario_generator import generate_scenario
from src.domain.value_objects.cost_report import DesignSpec
from src.domain.value_objects.design_mode import DesignMode
from src.infrastructure.serialization.layout_format import LayoutDocument
from src.shared.config import settings
from src.shared.exceptions import IncompatibleExperimentError

logger = logging.getLogger(__name__)


def scenario_summary(scenario: Scenario) -> ScenarioSummaryDTO:
    return ScenarioSummaryDTO(
        label=scenario.label(),
        seed_used=scenario.seed_used,
        attempts=scenario.attempts,
        comm_edges=len(scenario.comm.edges),
        interference_edges=len(scenario.interference.edges),
        generator=Scenario.GENERATOR,
    )


class ScenarioUseCases:
    """Scenario generation use cases implementation."""

    def __init__(self, max_attempts: Optional[int] = None):
        self._max_attempts = max_attempts or settings.max_scenario_attempts

    def generate(self, config: ScenarioConfig) -> Scenario:
        """Draw a usable scenario for the configuration."""
        return generate_scenario(config.to_parameters(), max_attempts=self._max_attempts)

    def summarize(self, config: ScenarioConfig) -> ScenarioSummaryDTO:
        return scenario_summary(self.generate(config))


class DesignUseCases:
    """Estimate/design synthesis use cases implementation."""

    def __init__(self, scenario_use_cases: Optional[ScenarioUseCases] = None):
        self._scenarios = scenario_use_cases or ScenarioUseCases()

    def design_for_scenario(self, request: DesignRequestDTO) -> Tuple[ENDLayout, DesignResponseDTO]:
        """Generate the scenario, synthesize its layout and report on it."""
        scenario = self._scenarios.generate(request.scenario)
        comm, symmetrized = self._design_comm(scenario.comm, request.design)
        layout = synthesize_design(self._spec(request.design), comm, scenario.interference, scenario.partition)
        return layout, self._response(layout, request.design, symmetrized, scenario_summary(scenario))

    def design_from_document(
        self, document: LayoutDocument, design: DesignSpecDTO
    ) -> Tuple[ENDLayout, DesignResponseDTO]:
        """Use a complete layout file as is, otherwise synthesize estimate and design graphs."""
        if document.is_complete:
            logger.info("Layout file already carries estimate and design graphs")
            layout = document.to_layout()
            return layout, self._response(layout, design, False, None)

        comm, symmetrized = self._design_comm(document.comm, design)
        layout = synthesize_design(self._spec(design), comm, document.interference, document.partition)
        return layout, self._response(layout, design, symmetrized, None)

    def _design_comm(self, comm: DirectedGraph, design: DesignSpecDTO) -> Tuple[DirectedGraph, bool]:
        if design.mode is not DesignMode.STEINER_UNDIRECTED or comm.is_symmetric():
            return comm, False
        if not design.symmetrize:
            raise IncompatibleExperimentError(
                "Undirected Steiner design needs an undirected communication graph",
                details="enable symmetrize to keep only bidirectional links",
            )
        logger.info("Dropping %d one-way links before the undirected design", len(comm.asymmetric_edges()))
        return comm.symmetric_core(), True

    @staticmethod
    def _spec(design: DesignSpecDTO) -> DesignSpec:
        return DesignSpec(mode=design.mode, edge_policy=design.edge_policy)

    @staticmethod
    def _response(
        layout: ENDLayout,
        design: DesignSpecDTO,
        symmetrized: bool,
        scenario: Optional[ScenarioSummaryDTO],
    ) -> DesignResponseDTO:
        report = layout.validate()
        cost = cost_report(layout)
        return DesignResponseDTO(
            scenario=scenario,
            mode=design.mode,
            edge_policy=design.edge_policy,
            symmetrized=symmetrized,
            cost=CostReportDTO(
                copies_per_component=cost.copies_per_component,
                steiner_nodes_per_component=cost.steiner_nodes_per_component,
                total_copies=cost.total_copies,
                total_memory=cost.total_memory,
                per_iteration_broadcast_cost=cost.per_iteration_broadcast_cost,
            ),
            standing_assumption_holds=report.standing_assumption_holds,
            strongly_connected=report.strongly_connected,
            undirected_connected=report.undirected_connected,
            failures=report.failures(),
        )
