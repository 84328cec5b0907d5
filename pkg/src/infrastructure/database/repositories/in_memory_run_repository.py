"""
In-memory Run Repository (Adapter) for tests and database-free CLI runs.
"""

from typing import Dict, List, Optional
from uuid import UUID

from src.domain.entities.run_record import RunRecord
from src.domain.repositories.run_repository import RunRepository


class InMemoryRunRepository(RunRepository):
    """Keeps run records in a dict."""

    def __init__(self):
        self._runs: Dict[UUID, RunRecord] = {}

    async def create(self, run: RunRecord) -> RunRecord:
        self._runs[run.id] = run
        return run

    async def get_by_id(self, run_id: UUID) -> Optional[RunRecord]:
        return self._runs.get(run_id)

    async def list_all(self, limit: int = 100, offset: int = 0) -> List[RunRecord]:
        ordered = sorted(self._runs.values(), key=lambda run: run.created_at, reverse=True)
        return ordered[offset:offset + limit]

    async def count_all(self) -> int:
        return len(self._runs)

    async def delete(self, run_id: UUID) -> bool:
        return self._runs.pop(run_id, None) is not None
