"""
JSON scenario config files.
"""

import json
from pathlib import Path

from pydantic import ValidationError as PydanticValidationError

from src.application.dtos.scenario_dto import ScenarioConfig
from src.infrastructure.serialization.text_format import PathLike
from src.shared.exceptions import SerializationError


def load_scenario_config(path: PathLike) -> ScenarioConfig:
    """Read a JSON scenario config and validate it."""
    try:
        with Path(path).open("r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SerializationError(f"Cannot read scenario config: {str(e)}", path=str(path)) from e

    try:
        return ScenarioConfig(**data)
    except PydanticValidationError as e:
        raise SerializationError(f"Invalid scenario config: {e.errors()[0]['msg']}", path=str(path)) from e


def save_scenario_config(path: PathLike, config: ScenarioConfig) -> None:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(config.model_dump_json(indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise SerializationError(f"Cannot write scenario config: {str(e)}", path=str(path)) from e
