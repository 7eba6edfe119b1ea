from abc import ABC, abstractmethod
from collections.abc import Iterable

from gpsort.domain.experiment import Trial


class ExperimentNotFoundError(Exception):
    """Exception raised when experiments are not found in the repository."""

    def __init__(self, experiment_ids: set[str]) -> None:
        """Initializes the `ExperimentNotFoundError` exception.

        Args:
            experiment_ids: The identifiers of the experiments that were not found.
        """
        super().__init__(f"Experiments {sorted(experiment_ids)!r} not found in the repository.")
        self.experiment_ids = experiment_ids


class AbstractTrialRepository(ABC):
    """Abstract `Trial` row repository."""

    @abstractmethod
    def upsert_trials(self, trials: Iterable[Trial]) -> None:
        """Upserts trial rows, keyed by experiment id, n and trial index.

        Args:
            trials: The rows to upsert.
        """

    @abstractmethod
    def list_trials(self, experiment_id: str | None = None) -> list[Trial]:
        """Lists trial rows ordered by experiment id, n and trial index.

        Args:
            experiment_id: Only list the rows of this experiment, if given.

        Returns:
            A list of `Trial` rows.
        """

    @abstractmethod
    def list_experiment_ids(self) -> list[str]:
        """Lists the identifiers of every stored experiment.

        Returns:
            The sorted experiment identifiers.
        """

    @abstractmethod
    def delete_experiments(self, experiment_ids: set[str]) -> None:
        """Deletes every row of the given experiments.

        Args:
            experiment_ids: The identifiers of the experiments to delete.

        Raises:
            ExperimentNotFoundError: If any of the experiments is not stored.
        """
