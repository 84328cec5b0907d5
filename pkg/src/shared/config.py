"""
Application configuration using Pydantic Settings.
"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings."""

    # Application
    app_name: str = "END Optimizer"
    app_version: str = "1.0.0"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000

    # Database
    database_url: str = "sqlite:///./end_runs.db"

    # Logging
    log_level: str = "INFO"
    log_format: str = "json"

    # Results
    results_dir: str = "./results"

    # Numerics
    numeric_tolerance: float = 1e-9
    divergence_bound: float = 1e6

    # Scenario generation
    max_scenario_attempts: int = 50
    paper_scale_agents: int = 100
    paper_scale_sources: int = 20
    desk_scale_agents: int = 20
    desk_scale_sources: int = 8

    # Experiments
    default_max_iterations: int = 20000
    default_merit_threshold: float = 1e-2
    trace_every: int = 1
    sweep_workers: int = 1

    class Config:
        env_file = ".env"
        case_sensitive = False


# Global settings instance
settings = Settings()
