from abc import ABC, abstractmethod
from collections.abc import Sequence

from gpsort.domain.model import RunConfig, RunRecord


class AbstractTrialRunner(ABC):
    """Abstract executor of independent runs."""

    @abstractmethod
    def run_trials(self, configs: Sequence[RunConfig]) -> list[RunRecord]:
        """Execute one run per config.

        Args:
            configs: The run configs.

        Returns:
            The run records, in the order of `configs`.
        """
