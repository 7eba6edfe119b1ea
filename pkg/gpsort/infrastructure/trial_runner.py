import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor

from tqdm.auto import tqdm

from gpsort.application.ports.trial_runner import AbstractTrialRunner
from gpsort.domain.engine import run
from gpsort.domain.model import RunConfig, RunRecord

logger = logging.getLogger(__name__)


class SequentialTrialRunner(AbstractTrialRunner):
    """Runs every trial in the calling process."""

    def run_trials(self, configs: Sequence[RunConfig]) -> list[RunRecord]:
        """Execute one run per config, one after the other.

        Args:
            configs: The run configs.

        Returns:
            The run records, in the order of `configs`.
        """
        return [run(config) for config in tqdm(configs, desc="Running trials", unit="trial")]


class ProcessPoolTrialRunner(AbstractTrialRunner):
    """Runs trials on a bounded pool of worker processes."""

    def __init__(self, max_workers: int) -> None:
        """Initializes the `ProcessPoolTrialRunner`.

        Args:
            max_workers: The maximum number of worker processes.
        """
        self.max_workers = max_workers

    def run_trials(self, configs: Sequence[RunConfig]) -> list[RunRecord]:
        """Execute one run per config in parallel.

        Every run owns its random stream, so the records equal those of a sequential execution.

        Args:
            configs: The run configs.

        Returns:
            The run records, in the order of `configs`.
        """
        logger.debug("Running %d trials on %d workers", len(configs), self.max_workers)
        with ProcessPoolExecutor(max_workers=self.max_workers) as executor:
            return list(
                tqdm(executor.map(run, configs), desc="Running trials", unit="trial", total=len(configs)),
            )
