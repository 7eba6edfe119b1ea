from gpsort.domain.experiment import ExperimentKind, ExperimentSpec
from gpsort.domain.model import Variant
from gpsort.infrastructure.trial_runner import ProcessPoolTrialRunner, SequentialTrialRunner


def test_process_pool_matches_sequential() -> None:
    spec = ExperimentSpec(ExperimentKind.SCALE, (5,), trials=6, budget=20_000, base_seed=3, variant=Variant.MULTI)
    configs = spec.run_configs(5)
    sequential = SequentialTrialRunner().run_trials(configs)
    parallel = ProcessPoolTrialRunner(max_workers=2).run_trials(configs)
    assert parallel == sequential
    assert [record.seed for record in parallel] == [config.seed for config in configs]


def test_empty_batch() -> None:
    assert SequentialTrialRunner().run_trials([]) == []
