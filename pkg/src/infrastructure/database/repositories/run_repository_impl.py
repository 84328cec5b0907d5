"""
Run Repository Implementation (Adapter).
"""

from typing import List, Optional
from uuid import UUID

from sqlalchemy import delete, func, select
from sqlalchemy.ext.asyncio import AsyncSession

from src.domain.entities.run_record import RunRecord
from src.domain.repositories.run_repository import RunRepository
from src.infrastructure.database.models import RunModel
from src.shared.exceptions import DatabaseError


class RunRepositoryImpl(RunRepository):
    """Run repository implementation."""

    def __init__(self, session: AsyncSession):
        self._session = session

    async def create(self, run: RunRecord) -> RunRecord:
        """Store a new run record."""
        try:
            run_model = RunModel(
                run_id=run.id,
                scenario=run.scenario,
                seed=str(run.seed),
                algorithm=run.algorithm.value,
                design_mode=run.design_mode.value,
                iterations=run.iterations,
                iterations_to_threshold=run.iterations_to_threshold,
                total_cost=run.total_cost,
                memory=run.memory,
                final_merit=run.final_merit,
                symmetrized=run.symmetrized,
                created_at=run.created_at,
            )

            self._session.add(run_model)
            await self._session.commit()
            await self._session.refresh(run_model)

            return self._to_domain(run_model)
        except Exception as e:
            await self._session.rollback()
            raise DatabaseError(f"Failed to create run record: {str(e)}") from e

    async def get_by_id(self, run_id: UUID) -> Optional[RunRecord]:
        """Get run record by ID."""
        try:
            result = await self._session.execute(select(RunModel).where(RunModel.run_id == run_id))
            run_model = result.scalar_one_or_none()

            return self._to_domain(run_model) if run_model else None
        except Exception as e:
            raise DatabaseError(f"Failed to get run record by ID: {str(e)}") from e

    async def list_all(self, limit: int = 100, offset: int = 0) -> List[RunRecord]:
        """List run records, newest first."""
        try:
            result = await self._session.execute(
                select(RunModel)
                .offset(offset)
                .limit(limit)
                .order_by(RunModel.created_at.desc())
            )
            return [self._to_domain(run_model) for run_model in result.scalars().all()]
        except Exception as e:
            raise DatabaseError(f"Failed to list run records: {str(e)}") from e

    async def count_all(self) -> int:
        """Count stored run records."""
        try:
            result = await self._session.execute(select(func.count(RunModel.run_id)))
            return result.scalar() or 0
        except Exception as e:
            raise DatabaseError(f"Failed to count run records: {str(e)}") from e

    async def delete(self, run_id: UUID) -> bool:
        """Delete run record by ID."""
        try:
            result = await self._session.execute(delete(RunModel).where(RunModel.run_id == run_id))
            await self._session.commit()

            return result.rowcount > 0
        except Exception as e:
            await self._session.rollback()
            raise DatabaseError(f"Failed to delete run record: {str(e)}") from e

    def _to_domain(self, run_model: RunModel) -> RunRecord:
        """Convert SQLAlchemy model to domain entity."""
        return RunRecord(
            run_id=run_model.run_id,
            scenario=run_model.scenario,
            seed=int(run_model.seed),
            algorithm=run_model.algorithm,
            design_mode=run_model.design_mode,
            iterations=run_model.iterations,
            iterations_to_threshold=run_model.iterations_to_threshold,
            total_cost=run_model.total_cost,
            memory=run_model.memory,
            final_merit=run_model.final_merit,
            symmetrized=run_model.symmetrized,
            created_at=run_model.created_at,
        )
