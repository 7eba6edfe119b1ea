from pathlib import Path
from types import TracebackType

from sqlalchemy.orm import Session, sessionmaker

from gpsort.application.ports.persistence.unit_of_work import AbstractUnitOfWork
from gpsort.infrastructure.persistence.repository import CsvTrialRepository, SqlAlchemyTrialRepository


class SqlAlchemyUnitOfWork(AbstractUnitOfWork):
    """A `SQLAlchemy` Unit of Work for managing transactions."""

    def __init__(self, session_factory: sessionmaker[Session]) -> None:
        """Initializes the `SqlAlchemyUnitOfWork`.

        Args:
            session_factory: The `SQLAlchemy` session factory.
        """
        self.session_factory = session_factory

    def __enter__(self) -> "SqlAlchemyUnitOfWork":
        """Enter the Unit of Work context with a fresh session.

        Returns:
            The Unit of Work.
        """
        self.session: Session = self.session_factory()
        self.trials = SqlAlchemyTrialRepository(self.session)
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_value: BaseException | None,
        traceback: TracebackType | None,
    ) -> None:
        """Exit the Unit of Work context and close the session.

        Args:
            exc_type: The exception type.
            exc_value: The exception instance.
            traceback: The traceback object.
        """
        super().__exit__(exc_type, exc_value, traceback)
        self.session.close()

    def commit(self) -> None:
        """Commit the transaction."""
        self.session.commit()

    def rollback(self) -> None:
        """Rollback the transaction."""
        self.session.rollback()


class CsvUnitOfWork(AbstractUnitOfWork):
    """A Unit of Work over experiment CSV files; staged rows reach the files on commit."""

    trials: CsvTrialRepository

    def __init__(self, directory: Path) -> None:
        """Initializes the `CsvUnitOfWork`.

        Args:
            directory: The directory holding the experiment files.
        """
        self.directory = directory

    def __enter__(self) -> "CsvUnitOfWork":
        """Enter the Unit of Work context with an empty staging area.

        Returns:
            The Unit of Work.
        """
        self.trials = CsvTrialRepository(self.directory)
        return self

    def commit(self) -> None:
        """Write the staged rows."""
        self.trials.flush()

    def rollback(self) -> None:
        """Drop the staged rows."""
        self.trials.discard()
