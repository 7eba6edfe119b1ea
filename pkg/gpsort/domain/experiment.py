from dataclasses import dataclass, fields
from enum import StrEnum
from itertools import pairwise
from pathlib import Path

from gpsort.domain.model import InitConfig, InitMode, Measure, RunConfig, RunRecord, Variant

_MASK64 = (1 << 64) - 1


class InvalidExperimentSpecError(Exception):
    """Raised when an experiment spec violates its invariants."""

    def __init__(self, reason: str) -> None:
        """Initialize the exception with the violated invariant.

        Args:
            reason: A description of the violated invariant.
        """
        super().__init__(f"Invalid experiment spec: {reason}")
        self.reason = reason


class ExperimentKind(StrEnum):
    """The experiment campaigns."""

    RUN = "run"
    SCALE = "scale"
    STAGNATE = "stagnate"
    PROBE = "probe"
    VERIFY = "verify"


def splitmix64(value: int) -> int:
    """Scramble a 64-bit integer with the splitmix64 finalizer.

    Args:
        value: The input value.

    Returns:
        The scrambled 64-bit value.
    """
    z = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(base_seed: int, trial_index: int) -> int:
    """Derive the seed of one trial.

    Args:
        base_seed: The experiment's base seed.
        trial_index: The zero-based trial index.

    Returns:
        `base_seed XOR splitmix64(trial_index)`, truncated to 64 bits.
    """
    return (base_seed ^ splitmix64(trial_index)) & _MASK64


@dataclass(frozen=True)
class ExperimentSpec:
    """Parameters of one experiment campaign."""

    kind: ExperimentKind
    """The campaign."""

    n_values: tuple[int, ...]
    """Terminal-set sizes, strictly increasing."""

    trials: int = 1
    """Seeded runs per n."""

    budget: int = 1_000_000
    """Fitness evaluations per run, the initial one included."""

    base_seed: int = 0
    """Seed every trial seed is derived from."""

    measure: Measure = Measure.INV
    """The fitness measure."""

    variant: Variant = Variant.SINGLE
    """Single or multi sub-operation offspring."""

    init: InitMode = InitMode.PERM_COMB
    """How initial trees are built."""

    p_join: float = 0.5
    """Join probability of grow initialization."""

    output_dir: Path = Path("results")
    """Where file outputs go."""

    def __post_init__(self) -> None:
        """Validate the spec.

        Raises:
            InvalidExperimentSpecError: If any invariant is violated.
        """
        if not self.n_values:
            raise InvalidExperimentSpecError("n_values must not be empty")
        if any(b <= a for a, b in pairwise(self.n_values)):
            raise InvalidExperimentSpecError(f"n_values must be strictly increasing, got {list(self.n_values)}")
        if self.n_values[0] < 2:
            raise InvalidExperimentSpecError(f"every n must be at least 2, got {self.n_values[0]}")
        if self.trials < 1:
            raise InvalidExperimentSpecError(f"trials must be at least 1, got {self.trials}")
        if self.budget < 1:
            raise InvalidExperimentSpecError(f"budget must be at least 1, got {self.budget}")
        if not 0 <= self.base_seed <= _MASK64:
            raise InvalidExperimentSpecError(f"base_seed must be an unsigned 64-bit integer, got {self.base_seed}")

    @property
    def experiment_id(self) -> str:
        """Return the deterministic identifier of the experiment.

        Returns:
            `<kind>-<measure>-<variant>-<init>-s<base_seed>`, or `<kind>-s<base_seed>` for probe and verify.
        """
        if self.kind in {ExperimentKind.PROBE, ExperimentKind.VERIFY}:
            return f"{self.kind}-s{self.base_seed}"
        return f"{self.kind}-{self.measure}-{self.variant}-{self.init}-s{self.base_seed}"

    def init_config(self, n: int) -> InitConfig:
        """Build the initialization config for one n.

        Args:
            n: The terminal-set size.

        Returns:
            The initialization config.
        """
        return InitConfig(n, mode=self.init, p_join=self.p_join)

    def run_config(self, n: int, trial: int, *, measure: Measure | None = None, keep_trees: bool = False) -> RunConfig:
        """Build the run config of one trial.

        Args:
            n: The terminal-set size.
            trial: The trial index.
            measure: Overrides the spec's measure, if given.
            keep_trees: Whether the run keeps its accepted trees.

        Returns:
            The run config.
        """
        return RunConfig(
            n=n,
            measure=measure or self.measure,
            variant=self.variant,
            init=self.init_config(n),
            budget=self.budget,
            seed=trial_seed(self.base_seed, trial),
            keep_trees=keep_trees,
        )

    def run_configs(self, n: int) -> list[RunConfig]:
        """Build the run configs of every trial for one n.

        Args:
            n: The terminal-set size.

        Returns:
            One config per trial, in trial order.
        """
        return [self.run_config(n, trial) for trial in range(self.trials)]


@dataclass(frozen=True)
class Trial:
    """One persisted result row; field order is the column order of trial files."""

    experiment_id: str
    kind: ExperimentKind
    measure: Measure
    variant: Variant
    init: InitMode
    n: int
    trial: int
    seed: int
    evaluations: int
    hit_optimum: bool
    best_fitness: int
    improvements: int
    max_tree_size: int

    @classmethod
    def from_record(cls, spec: ExperimentSpec, n: int, trial: int, record: RunRecord) -> "Trial":
        """Build the row of a finished run.

        Args:
            spec: The experiment the run belongs to.
            n: The terminal-set size.
            trial: The trial index.
            record: The trace of the run.

        Returns:
            The result row.
        """
        return cls(
            experiment_id=spec.experiment_id,
            kind=spec.kind,
            measure=spec.measure,
            variant=spec.variant,
            init=spec.init,
            n=n,
            trial=trial,
            seed=record.seed,
            evaluations=record.evaluations_used,
            hit_optimum=record.hit_optimum,
            best_fitness=record.final_fitness.value,
            improvements=len(record.improvements),
            max_tree_size=record.max_tree_size,
        )

    @property
    def key(self) -> tuple[str, int, int]:
        """Return the upsert key of the row.

        Returns:
            The triple `(experiment_id, n, trial)`.
        """
        return self.experiment_id, self.n, self.trial


TRIAL_COLUMNS: tuple[str, ...] = tuple(field.name for field in fields(Trial))
