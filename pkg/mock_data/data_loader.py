"""
Data loader for mock scenario configs and layout files.
"""

import logging
import os
from pathlib import Path
from typing import Dict, List, Union

from src.application.dtos.scenario_dto import ScenarioConfig
from src.infrastructure.serialization.layout_format import LayoutDocument, load_layout
from src.infrastructure.serialization.scenario_config import load_scenario_config

logger = logging.getLogger(__name__)


class MockDataLoader:
    """Loader for the bundled scenario configs and layouts."""

    def __init__(self, base_path: Union[str, Path, None] = None):
        """Initialize data loader."""
        self._mock_data_path = Path(base_path or os.path.dirname(__file__))

    def scenario_names(self) -> List[str]:
        return sorted(p.stem for p in (self._mock_data_path / "scenarios").glob("*.json"))

    def layout_names(self) -> List[str]:
        return sorted(p.stem for p in (self._mock_data_path / "layouts").glob("*.txt"))

    def scenario_path(self, name: str) -> Path:
        return self._mock_data_path / "scenarios" / f"{name}.json"

    def scenario(self, name: str) -> ScenarioConfig:
        """Bundled scenario config by file stem."""
        return load_scenario_config(self.scenario_path(name))

    def layout(self, name: str) -> LayoutDocument:
        """Bundled layout file by file stem."""
        return load_layout(self._mock_data_path / "layouts" / f"{name}.txt")

    def all_scenarios(self) -> Dict[str, ScenarioConfig]:
        scenarios = {name: self.scenario(name) for name in self.scenario_names()}
        logger.debug("Loaded %d scenario configs", len(scenarios))
        return scenarios
