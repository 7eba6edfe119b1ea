from pathlib import Path

import pytest
from sqlalchemy.orm import Session, sessionmaker

from gpsort.application.ports.persistence.unit_of_work import AbstractUnitOfWork
from gpsort.domain.experiment import ExperimentKind, Trial
from gpsort.domain.model import InitMode, Measure, Variant
from gpsort.infrastructure.persistence.unit_of_work import CsvUnitOfWork, SqlAlchemyUnitOfWork


@pytest.fixture
def sample_trial() -> Trial:
    return Trial(
        experiment_id="stagnate-run-single-w1-s0",
        kind=ExperimentKind.STAGNATE,
        measure=Measure.RUN,
        variant=Variant.SINGLE,
        init=InitMode.W1,
        n=6,
        trial=0,
        seed=0,
        evaluations=0,
        hit_optimum=False,
        best_fitness=2,
        improvements=0,
        max_tree_size=25,
    )


@pytest.fixture(params=["sql", "csv"])
def uow(request: pytest.FixtureRequest, tmp_path: Path) -> AbstractUnitOfWork:
    if request.param == "sql":
        session_factory: sessionmaker[Session] = request.getfixturevalue("in_memory_sqlite_session_factory")
        return SqlAlchemyUnitOfWork(session_factory)
    return CsvUnitOfWork(tmp_path)


class TestUnitOfWork:
    def test_commit(self, uow: AbstractUnitOfWork, sample_trial: Trial) -> None:
        with uow:
            uow.trials.upsert_trials([sample_trial])
            uow.commit()

        with uow:
            assert uow.trials.list_trials() == [sample_trial]

        with uow:
            uow.trials.delete_experiments({sample_trial.experiment_id})
            uow.commit()

        with uow:
            assert uow.trials.list_trials() == []

    def test_implicit_rollback(self, uow: AbstractUnitOfWork, sample_trial: Trial) -> None:
        with uow:
            uow.trials.upsert_trials([sample_trial])

        with uow:
            assert uow.trials.list_trials() == []

    def test_rollback_on_error(self, uow: AbstractUnitOfWork, sample_trial: Trial) -> None:
        with pytest.raises(RuntimeError), uow:
            uow.trials.upsert_trials([sample_trial])
            raise RuntimeError

        with uow:
            assert uow.trials.list_trials() == []
