from dataclasses import replace
from pathlib import Path

import pytest
from sqlalchemy.orm import Session

from gpsort.application.ports.persistence.repository import AbstractTrialRepository, ExperimentNotFoundError
from gpsort.domain.experiment import TRIAL_COLUMNS, ExperimentKind, Trial
from gpsort.domain.model import InitMode, Measure, Variant
from gpsort.infrastructure.persistence.repository import CsvTrialRepository, SqlAlchemyTrialRepository


@pytest.fixture
def sample_trial() -> Trial:
    return Trial(
        experiment_id="scale-inv-single-perm-comb-s0",
        kind=ExperimentKind.SCALE,
        measure=Measure.INV,
        variant=Variant.SINGLE,
        init=InitMode.PERM_COMB,
        n=8,
        trial=0,
        seed=2**64 - 1,
        evaluations=1234,
        hit_optimum=True,
        best_fitness=28,
        improvements=11,
        max_tree_size=21,
    )


@pytest.fixture(params=["sql", "csv"])
def repo(request: pytest.FixtureRequest, tmp_path: Path) -> AbstractTrialRepository:
    if request.param == "sql":
        return SqlAlchemyTrialRepository(request.getfixturevalue("in_memory_sqlite_session"))
    return CsvTrialRepository(tmp_path)


class TestTrialRepository:
    def test_upsert_and_list(self, repo: AbstractTrialRepository, sample_trial: Trial) -> None:
        repo.upsert_trials([sample_trial])
        assert repo.list_trials() == [sample_trial]
        assert repo.list_trials(sample_trial.experiment_id) == [sample_trial]
        assert repo.list_trials("other") == []

    def test_upsert_replaces_by_key(self, repo: AbstractTrialRepository, sample_trial: Trial) -> None:
        repo.upsert_trials([sample_trial])
        updated = replace(sample_trial, evaluations=99, hit_optimum=False)
        repo.upsert_trials([updated])
        assert repo.list_trials() == [updated]

    def test_last_duplicate_wins(self, repo: AbstractTrialRepository, sample_trial: Trial) -> None:
        repo.upsert_trials([sample_trial, replace(sample_trial, improvements=1)])
        [stored] = repo.list_trials()
        assert stored.improvements == 1

    def test_ordering(self, repo: AbstractTrialRepository, sample_trial: Trial) -> None:
        trials = [
            replace(sample_trial, n=16, trial=0),
            replace(sample_trial, n=8, trial=1),
            replace(sample_trial, experiment_id="a-s0", n=32),
            sample_trial,
        ]
        repo.upsert_trials(trials)
        assert [trial.key for trial in repo.list_trials()] == [
            ("a-s0", 32, 0),
            (sample_trial.experiment_id, 8, 0),
            (sample_trial.experiment_id, 8, 1),
            (sample_trial.experiment_id, 16, 0),
        ]
        assert repo.list_experiment_ids() == ["a-s0", sample_trial.experiment_id]

    def test_delete_experiments(self, repo: AbstractTrialRepository, sample_trial: Trial) -> None:
        repo.upsert_trials([sample_trial, replace(sample_trial, experiment_id="other")])
        repo.delete_experiments({"other"})
        assert repo.list_experiment_ids() == [sample_trial.experiment_id]

    def test_delete_missing_experiment(self, repo: AbstractTrialRepository, sample_trial: Trial) -> None:
        repo.upsert_trials([sample_trial])
        with pytest.raises(ExperimentNotFoundError) as excinfo:
            repo.delete_experiments({sample_trial.experiment_id, "missing"})
        assert excinfo.value.experiment_ids == {"missing"}
        assert repo.list_trials() == [sample_trial]


class TestSqlAlchemyTrialRepository:
    def test_upsert_in_chunks(self, in_memory_sqlite_session: Session, sample_trial: Trial) -> None:
        repo = SqlAlchemyTrialRepository(in_memory_sqlite_session)
        trials = [replace(sample_trial, trial=index) for index in range(2_500)]
        repo.upsert_trials(trials)
        assert repo.list_trials() == trials


class TestCsvTrialRepository:
    def test_flush_writes_one_file_per_experiment(self, tmp_path: Path, sample_trial: Trial) -> None:
        repo = CsvTrialRepository(tmp_path)
        repo.upsert_trials([sample_trial, replace(sample_trial, experiment_id="other")])
        assert list(tmp_path.iterdir()) == []

        repo.flush()
        lines = (tmp_path / f"{sample_trial.experiment_id}.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(TRIAL_COLUMNS)
        assert lines[1].split(",")[9] == "1"
        assert CsvTrialRepository(tmp_path).list_trials(sample_trial.experiment_id) == [sample_trial]

    def test_discard_drops_staged_rows(self, tmp_path: Path, sample_trial: Trial) -> None:
        repo = CsvTrialRepository(tmp_path)
        repo.upsert_trials([sample_trial])
        repo.discard()
        assert repo.list_trials() == []

    def test_flush_removes_deleted_files(self, tmp_path: Path, sample_trial: Trial) -> None:
        repo = CsvTrialRepository(tmp_path)
        repo.upsert_trials([sample_trial])
        repo.flush()
        repo.delete_experiments({sample_trial.experiment_id})
        repo.flush()
        assert not (tmp_path / f"{sample_trial.experiment_id}.csv").exists()

    def test_ignores_unrelated_csv_files(self, tmp_path: Path, sample_trial: Trial) -> None:
        (tmp_path / "probe-s0-probabilities.csv").write_text("family,n\nx,8\n", encoding="utf-8")
        repo = CsvTrialRepository(tmp_path)
        repo.upsert_trials([sample_trial])
        repo.flush()
        assert repo.list_experiment_ids() == [sample_trial.experiment_id]
