from sqlalchemy import Boolean, Index, Integer, String, UniqueConstraint
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column


class Base(DeclarativeBase):
    """Base class for all SQLAlchemy ORM models."""


class TrialORM(Base):
    """`SQLAlchemy` ORM model representing one trial row in the database."""

    __tablename__ = "trial"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=True)
    experiment_id: Mapped[str] = mapped_column(String, nullable=False)
    kind: Mapped[str] = mapped_column(String, nullable=False)
    measure: Mapped[str] = mapped_column(String, nullable=False)
    variant: Mapped[str] = mapped_column(String, nullable=False)
    init: Mapped[str] = mapped_column(String, nullable=False)
    n: Mapped[int] = mapped_column(Integer, nullable=False)
    trial: Mapped[int] = mapped_column(Integer, nullable=False)
    # Seeds are unsigned 64-bit and overflow SQLite's signed integers.
    seed: Mapped[str] = mapped_column(String, nullable=False)
    evaluations: Mapped[int] = mapped_column(Integer, nullable=False)
    hit_optimum: Mapped[bool] = mapped_column(Boolean, nullable=False)
    best_fitness: Mapped[int] = mapped_column(Integer, nullable=False)
    improvements: Mapped[int] = mapped_column(Integer, nullable=False)
    max_tree_size: Mapped[int] = mapped_column(Integer, nullable=False)

    __table_args__ = (
        UniqueConstraint("experiment_id", "n", "trial", name="uq_trial_key"),
        Index("ix_trial_experiment_id", "experiment_id"),
    )
