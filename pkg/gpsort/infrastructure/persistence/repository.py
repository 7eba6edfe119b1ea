import csv
from collections.abc import Iterable, Iterator, Mapping
from itertools import islice
from pathlib import Path

from sqlalchemy import delete, select
from sqlalchemy.dialects.sqlite import insert
from sqlalchemy.orm import Session
from tqdm.auto import tqdm

from gpsort.application.ports.persistence.repository import AbstractTrialRepository, ExperimentNotFoundError
from gpsort.config import DATABASE_CHUNK_SIZE
from gpsort.domain.experiment import TRIAL_COLUMNS, ExperimentKind, Trial
from gpsort.domain.model import InitMode, Measure, Variant
from gpsort.infrastructure.persistence.orm import TrialORM

_UPDATED_COLUMNS = tuple(column for column in TRIAL_COLUMNS if column not in {"experiment_id", "n", "trial"})


def _chunks[T](items: list[T], chunk_size: int) -> Iterator[list[T]]:
    """Splits a list into chunks of a specified size.

    Args:
        items: The list to split.
        chunk_size: The size of each chunk.

    Yields:
        Consecutive chunks of at most `chunk_size` items.
    """
    items_iter = iter(items)
    while chunk := list(islice(items_iter, chunk_size)):
        yield chunk


class SqlAlchemyTrialRepository(AbstractTrialRepository):
    """A `Trial` row repository using `SQLAlchemy`."""

    def __init__(self, session: Session) -> None:
        """Initializes the `SqlAlchemyTrialRepository`.

        Args:
            session: The `SQLAlchemy` session.
        """
        self.session = session

    def upsert_trials(self, trials: Iterable[Trial]) -> None:
        """Upserts trial rows, keyed by experiment id, n and trial index.

        Args:
            trials: The rows to upsert.
        """
        # The last row per key wins, as with sequential upserts.
        rows = list({trial.key: trial for trial in trials}.values())
        for chunk in tqdm(
            _chunks(rows, DATABASE_CHUNK_SIZE),
            desc="Upserting trials into the database",
            unit="chunk",
            total=len(rows) // DATABASE_CHUNK_SIZE + 1,
        ):
            stmt = insert(TrialORM).values([self._to_values(trial) for trial in chunk])
            stmt = stmt.on_conflict_do_update(
                index_elements=[TrialORM.experiment_id, TrialORM.n, TrialORM.trial],
                set_={column: stmt.excluded[column] for column in _UPDATED_COLUMNS},
            )
            self.session.execute(stmt)
            self.session.flush()

    def list_trials(self, experiment_id: str | None = None) -> list[Trial]:
        """Lists trial rows ordered by experiment id, n and trial index.

        Args:
            experiment_id: Only list the rows of this experiment, if given.

        Returns:
            A list of `Trial` rows.
        """
        query = select(TrialORM).order_by(TrialORM.experiment_id, TrialORM.n, TrialORM.trial)
        if experiment_id is not None:
            query = query.where(TrialORM.experiment_id == experiment_id)
        return [self._to_trial(trial_orm) for trial_orm in self.session.execute(query).scalars()]

    def list_experiment_ids(self) -> list[str]:
        """Lists the identifiers of every stored experiment.

        Returns:
            The sorted experiment identifiers.
        """
        query = select(TrialORM.experiment_id).distinct().order_by(TrialORM.experiment_id)
        return list(self.session.execute(query).scalars())

    def delete_experiments(self, experiment_ids: set[str]) -> None:
        """Deletes every row of the given experiments.

        Args:
            experiment_ids: The identifiers of the experiments to delete.

        Raises:
            ExperimentNotFoundError: If any of the experiments is not stored.
        """
        existing = set(
            self.session.execute(
                select(TrialORM.experiment_id).where(TrialORM.experiment_id.in_(experiment_ids)).distinct()
            ).scalars()
        )
        if missing := experiment_ids - existing:
            raise ExperimentNotFoundError(missing)

        self.session.execute(
            delete(TrialORM)
            .where(TrialORM.experiment_id.in_(experiment_ids))
            .execution_options(synchronize_session=False),
        )
        self.session.flush()

    @staticmethod
    def _to_values(trial: Trial) -> dict[str, object]:
        """Converts a `Trial` row to the column values of a `TrialORM` object.

        Args:
            trial: The `Trial` row.

        Returns:
            The column values.
        """
        return {
            TrialORM.experiment_id.key: trial.experiment_id,
            TrialORM.kind.key: trial.kind.value,
            TrialORM.measure.key: trial.measure.value,
            TrialORM.variant.key: trial.variant.value,
            TrialORM.init.key: trial.init.value,
            TrialORM.n.key: trial.n,
            TrialORM.trial.key: trial.trial,
            TrialORM.seed.key: str(trial.seed),
            TrialORM.evaluations.key: trial.evaluations,
            TrialORM.hit_optimum.key: trial.hit_optimum,
            TrialORM.best_fitness.key: trial.best_fitness,
            TrialORM.improvements.key: trial.improvements,
            TrialORM.max_tree_size.key: trial.max_tree_size,
        }

    @staticmethod
    def _to_trial(trial_orm: TrialORM) -> Trial:
        """Converts a `TrialORM` ORM object to a `Trial` row.

        Args:
            trial_orm: The `TrialORM` object.

        Returns:
            The `Trial` row.
        """
        return Trial(
            experiment_id=trial_orm.experiment_id,
            kind=ExperimentKind(trial_orm.kind),
            measure=Measure(trial_orm.measure),
            variant=Variant(trial_orm.variant),
            init=InitMode(trial_orm.init),
            n=trial_orm.n,
            trial=trial_orm.trial,
            seed=int(trial_orm.seed),
            evaluations=trial_orm.evaluations,
            hit_optimum=trial_orm.hit_optimum,
            best_fitness=trial_orm.best_fitness,
            improvements=trial_orm.improvements,
            max_tree_size=trial_orm.max_tree_size,
        )


class CsvTrialRepository(AbstractTrialRepository):
    """A `Trial` row repository keeping one `<experiment_id>.csv` file per experiment.

    Changes are staged in memory and only reach the files on `flush`, so that a unit of work can discard them.
    """

    def __init__(self, directory: Path) -> None:
        """Initializes the `CsvTrialRepository`.

        Args:
            directory: The directory holding the experiment files.
        """
        self.directory = directory
        self._staged: dict[str, dict[tuple[int, int], Trial]] = {}
        self._deleted: set[str] = set()

    def _path(self, experiment_id: str) -> Path:
        """Return the CSV file of an experiment."""
        return self.directory / f"{experiment_id}.csv"

    def _stored_ids(self) -> set[str]:
        """Return the experiment ids with a trial file on disk, ignoring unrelated CSVs."""
        if not self.directory.is_dir():
            return set()
        return {path.stem for path in self.directory.glob("*.csv") if self._has_trial_header(path)}

    @staticmethod
    def _has_trial_header(path: Path) -> bool:
        """Return whether a CSV file starts with the trial header."""
        with path.open(newline="", encoding="utf-8") as file:
            return tuple(next(csv.reader(file), ())) == TRIAL_COLUMNS

    def _read(self, experiment_id: str) -> dict[tuple[int, int], Trial]:
        """Read an experiment's rows as seen by this unit of work.

        Staged rows override stored ones and staged deletions hide the file.

        Args:
            experiment_id: The experiment id.

        Returns:
            The rows, keyed by `(n, trial)`.
        """
        if experiment_id in self._deleted:
            rows: dict[tuple[int, int], Trial] = {}
        elif experiment_id in self._stored_ids():
            with self._path(experiment_id).open(newline="", encoding="utf-8") as file:
                rows = {(trial.n, trial.trial): trial for trial in map(self._to_trial, csv.DictReader(file))}
        else:
            rows = {}
        rows.update(self._staged.get(experiment_id, {}))
        return rows

    def _visible_ids(self) -> set[str]:
        """Return the experiment ids visible to this unit of work."""
        return (self._stored_ids() - self._deleted) | self._staged.keys()

    def upsert_trials(self, trials: Iterable[Trial]) -> None:
        """Stages trial rows for upsert, keyed by experiment id, n and trial index.

        Args:
            trials: The rows to upsert.
        """
        for trial in trials:
            self._staged.setdefault(trial.experiment_id, {})[trial.n, trial.trial] = trial

    def list_trials(self, experiment_id: str | None = None) -> list[Trial]:
        """Lists stored and staged trial rows ordered by experiment id, n and trial index.

        Args:
            experiment_id: Only list the rows of this experiment, if given.

        Returns:
            A list of `Trial` rows.
        """
        ids = sorted(self._visible_ids() if experiment_id is None else {experiment_id} & self._visible_ids())
        return [trial for current in ids for _, trial in sorted(self._read(current).items())]

    def list_experiment_ids(self) -> list[str]:
        """Lists the identifiers of every stored or staged experiment.

        Returns:
            The sorted experiment identifiers.
        """
        return sorted(self._visible_ids())

    def delete_experiments(self, experiment_ids: set[str]) -> None:
        """Stages the deletion of every row of the given experiments.

        Args:
            experiment_ids: The identifiers of the experiments to delete.

        Raises:
            ExperimentNotFoundError: If any of the experiments is not stored.
        """
        if missing := experiment_ids - self._visible_ids():
            raise ExperimentNotFoundError(missing)
        for experiment_id in experiment_ids:
            self._staged.pop(experiment_id, None)
        self._deleted |= experiment_ids

    def flush(self) -> None:
        """Writes staged changes to the experiment files."""
        self.directory.mkdir(parents=True, exist_ok=True)
        for experiment_id in self._deleted - self._staged.keys():
            self._path(experiment_id).unlink(missing_ok=True)
        for experiment_id in self._staged:
            rows = self._read(experiment_id)
            with self._path(experiment_id).open("w", newline="", encoding="utf-8") as file:
                writer = csv.DictWriter(file, fieldnames=TRIAL_COLUMNS)
                writer.writeheader()
                writer.writerows(self._to_row(trial) for _, trial in sorted(rows.items()))
        self.discard()

    def discard(self) -> None:
        """Drops staged changes."""
        self._staged.clear()
        self._deleted.clear()

    @staticmethod
    def _to_row(trial: Trial) -> dict[str, object]:
        """Converts a `Trial` row to a CSV record.

        Args:
            trial: The `Trial` row.

        Returns:
            The CSV record, keyed by column name.
        """
        return {
            "experiment_id": trial.experiment_id,
            "kind": trial.kind.value,
            "measure": trial.measure.value,
            "variant": trial.variant.value,
            "init": trial.init.value,
            "n": trial.n,
            "trial": trial.trial,
            "seed": trial.seed,
            "evaluations": trial.evaluations,
            "hit_optimum": int(trial.hit_optimum),
            "best_fitness": trial.best_fitness,
            "improvements": trial.improvements,
            "max_tree_size": trial.max_tree_size,
        }

    @staticmethod
    def _to_trial(row: Mapping[str, str]) -> Trial:
        """Converts a CSV record to a `Trial` row.

        Args:
            row: The CSV record, keyed by column name.

        Returns:
            The `Trial` row.
        """
        return Trial(
            experiment_id=row["experiment_id"],
            kind=ExperimentKind(row["kind"]),
            measure=Measure(row["measure"]),
            variant=Variant(row["variant"]),
            init=InitMode(row["init"]),
            n=int(row["n"]),
            trial=int(row["trial"]),
            seed=int(row["seed"]),
            evaluations=int(row["evaluations"]),
            hit_optimum=row["hit_optimum"] == "1",
            best_fitness=int(row["best_fitness"]),
            improvements=int(row["improvements"]),
            max_tree_size=int(row["max_tree_size"]),
        )
