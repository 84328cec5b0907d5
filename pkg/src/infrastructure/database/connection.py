"""
Database connection and session management for stored run summaries.
"""

import logging
from typing import Optional, Tuple

from sqlalchemy.ext.asyncio import AsyncEngine, AsyncSession, create_async_engine
from sqlalchemy.orm import declarative_base, sessionmaker

from src.shared.config import settings

logger = logging.getLogger(__name__)

Base = declarative_base()


def async_database_url(database_url: str) -> str:
    """Route plain SQLite URLs through the aiosqlite driver."""
    if database_url.startswith("sqlite://"):
        return database_url.replace("sqlite://", "sqlite+aiosqlite://", 1)
    return database_url


def build_session_factory(database_url: str, echo: bool = False) -> Tuple[AsyncEngine, sessionmaker]:
    """Engine plus a session factory bound to it."""
    engine = create_async_engine(async_database_url(database_url), echo=echo, pool_pre_ping=True)
    factory = sessionmaker(
        class_=AsyncSession,
        autocommit=False,
        autoflush=False,
        expire_on_commit=False,
        bind=engine,
    )
    return engine, factory


async_engine, AsyncSessionLocal = build_session_factory(settings.database_url, echo=settings.debug)


async def get_async_db():
    """Get async database session."""
    async with AsyncSessionLocal() as session:
        try:
            yield session
        finally:
            await session.close()


async def init_database(engine: Optional[AsyncEngine] = None) -> None:
    """Create the run tables if they are missing."""
    from src.infrastructure.database import models  # noqa: F401

    engine = engine or async_engine
    async with engine.begin() as conn:
        await conn.run_sync(Base.metadata.create_all)
    logger.info("Run tables ready on %s", engine.url.render_as_string(hide_password=True))
