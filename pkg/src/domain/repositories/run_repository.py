"""
Run Repository Interface (Port).
"""

from abc import ABC, abstractmethod
from typing import List, Optional
from uuid import UUID

from src.domain.entities.run_record import RunRecord


class RunRepository(ABC):
    """Run record repository interface."""

    @abstractmethod
    async def create(self, run: RunRecord) -> RunRecord:
        """Store a new run record."""
        pass

    @abstractmethod
    async def get_by_id(self, run_id: UUID) -> Optional[RunRecord]:
        """Get run record by ID."""
        pass

    @abstractmethod
    async def list_all(self, limit: int = 100, offset: int = 0) -> List[RunRecord]:
        """List run records, newest first."""
        pass

    @abstractmethod
    async def count_all(self) -> int:
        """Count stored run records."""
        pass

    @abstractmethod
    async def delete(self, run_id: UUID) -> bool:
        """Delete run record by ID."""
        pass
