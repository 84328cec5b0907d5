"""create runs table

Revision ID: 0001_create_runs
Revises:
Create Date: 2026-10-17
"""

import sqlalchemy as sa
from alembic import op

revision = "0001_create_runs"
down_revision = None
branch_labels = None
depends_on = None


def upgrade() -> None:
    op.create_table(
        "runs",
        sa.Column("run_id", sa.Uuid(), primary_key=True),
        sa.Column("scenario", sa.String(length=200), nullable=False),
        sa.Column("seed", sa.String(length=20), nullable=False),
        sa.Column("algorithm", sa.String(length=20), nullable=False),
        sa.Column("design_mode", sa.String(length=20), nullable=False),
        sa.Column("iterations", sa.Integer(), nullable=False),
        sa.Column("iterations_to_threshold", sa.Integer(), nullable=True),
        sa.Column("total_cost", sa.Float(), nullable=False),
        sa.Column("memory", sa.Integer(), nullable=False),
        sa.Column("final_merit", sa.Float(), nullable=False),
        sa.Column("symmetrized", sa.Boolean(), nullable=False),
        sa.Column("created_at", sa.DateTime(), server_default=sa.func.now(), nullable=False),
    )
    op.create_index("ix_runs_scenario", "runs", ["scenario"])


def downgrade() -> None:
    op.drop_index("ix_runs_scenario", table_name="runs")
    op.drop_table("runs")
