"""
SQLAlchemy models for END Optimizer.
"""

import uuid

from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String, Uuid
from sqlalchemy.sql import func

from src.infrastructure.database.connection import Base


class RunModel(Base):
    """Run summary SQLAlchemy model."""

    __tablename__ = "runs"

    run_id = Column(Uuid(as_uuid=True), primary_key=True, default=uuid.uuid4)
    scenario = Column(String(200), nullable=False, index=True)
    seed = Column(String(20), nullable=False, default="0")
    algorithm = Column(String(20), nullable=False)
    design_mode = Column(String(20), nullable=False)
    iterations = Column(Integer, nullable=False, default=0)
    iterations_to_threshold = Column(Integer, nullable=True)
    total_cost = Column(Float, nullable=False, default=0.0)
    memory = Column(Integer, nullable=False, default=0)
    final_merit = Column(Float, nullable=False, default=0.0)
    symmetrized = Column(Boolean, nullable=False, default=False)
    created_at = Column(DateTime, default=func.now(), nullable=False)
