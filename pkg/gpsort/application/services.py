import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np
from tqdm.auto import tqdm

from gpsort.application.analysis import MIN_FIT_POINTS, FitResult, fit_loglog
from gpsort.application.ports.persistence.unit_of_work import AbstractUnitOfWork
from gpsort.application.ports.series_writer import AbstractSeriesWriter
from gpsort.application.ports.trial_runner import AbstractTrialRunner
from gpsort.domain.experiment import ExperimentKind, ExperimentSpec, Trial
from gpsort.domain.model import InitMode, Measure, MutationKind, RunRecord, Variant
from gpsort.domain.oracle import (
    DEFAULT_ENUMERATION_LIMIT,
    NearOptimalReport,
    brute_force_exc,
    exact_improvement_probability,
    exact_success_probability,
    fitness_level_bound,
    misplaced_element_pattern,
    missing_element_pattern,
    naive_fitness,
    verify_lemma1_cases,
)
from gpsort.domain.sortedness import MEASURE_FUNCTIONS, ExpressedPermutation, evaluate, express
from gpsort.domain.tree import Tree, comb_from_leaf_list, worst_case_w1, worst_case_w2

logger = logging.getLogger(__name__)

WORST_CASE_MEASURES: dict[InitMode, frozenset[Measure]] = {
    InitMode.W1: frozenset({Measure.RUN, Measure.LAS}),
    InitMode.W2: frozenset({Measure.HAM, Measure.EXC}),
}
"""Measures each worst-case initialization traps."""

STATISTICAL_STAGNATION_SHARE = 0.95
"""Share of multi-variant trials without any improvement that counts as stagnation."""

WORKED_EXAMPLE_LABELS = (2, 2, 3, 4, 5, 1, 6, 3)
WORKED_EXAMPLE_N = 6
WORKED_EXAMPLE_QUOTED: dict[Measure, int] = {
    Measure.INV: 10,
    Measure.HAM: 1,
    Measure.RUN: 2,
    Measure.LAS: 4,
    Measure.EXC: 4,
}
"""Values commonly quoted for the worked example; INV and LAS are misprinted there."""

DELETION_ASSISTED = "deletion-assisted"
INSERT_SUBSTITUTE = "insert-substitute"
INV_BOTTLENECK = "inv-bottleneck"


class InitMeasureMismatchError(Exception):
    """Raised when a stagnation experiment pairs a worst-case init with a measure it does not trap."""

    def __init__(self, init: InitMode, measure: Measure) -> None:
        """Initializes the `InitMeasureMismatchError` exception.

        Args:
            init: The requested initialization.
            measure: The requested measure.
        """
        super().__init__(f"Initialization {init} is not a worst case for {measure.name}")
        self.init = init
        self.measure = measure


class StagnationViolationError(Exception):
    """Raised when a worst-case tree can be improved in a single step."""

    def __init__(self, n: int, measure: Measure, probability: Fraction) -> None:
        """Initializes the `StagnationViolationError` exception.

        Args:
            n: The terminal-set size.
            measure: The measure.
            probability: The nonzero improvement probability.
        """
        super().__init__(f"Worst case for {measure.name} at n={n} improves with probability {probability}")
        self.n = n
        self.measure = measure
        self.probability = probability


def _run_campaign(runner: AbstractTrialRunner, spec: ExperimentSpec) -> dict[int, list[tuple[Trial, RunRecord]]]:
    """Run every trial of every n of an experiment.

    Args:
        runner: The runner executing the runs.
        spec: The experiment spec.

    Returns:
        Per n, the rows and run records in trial order.
    """
    results: dict[int, list[tuple[Trial, RunRecord]]] = {}
    for n in spec.n_values:
        records = runner.run_trials(spec.run_configs(n))
        results[n] = [(Trial.from_record(spec, n, index, record), record) for index, record in enumerate(records)]
        logger.info(
            "%s n=%d: %d/%d runs hit the optimum",
            spec.experiment_id,
            n,
            sum(record.hit_optimum for record in records),
            len(records),
        )
    return results


def _store(uow: AbstractUnitOfWork, trials: Sequence[Trial]) -> None:
    """Upsert rows in a single committed unit of work."""
    with uow:
        uow.trials.upsert_trials(trials)
        uow.commit()
    logger.info("Stored %d trial rows", len(trials))


def _fit_or_none(points: Sequence[tuple[float, float]]) -> FitResult | None:
    """Fit a log-log line, or return None if there are too few points."""
    if len(points) < MIN_FIT_POINTS:
        logger.warning("Only %d points, skipping the log-log fit", len(points))
        return None
    return fit_loglog(points)


def run_trial(uow: AbstractUnitOfWork, runner: AbstractTrialRunner, spec: ExperimentSpec) -> tuple[Trial, RunRecord]:
    """Runs the first trial of the spec's first n and stores its row.

    Args:
        uow: The unit of work to store the row with.
        runner: The runner executing the run.
        spec: The experiment spec.

    Returns:
        The stored row and the full run record.
    """
    n = spec.n_values[0]
    [record] = runner.run_trials([spec.run_config(n, 0)])
    trial = Trial.from_record(spec, n, 0, record)
    _store(uow, [trial])
    return trial, record


@dataclass(frozen=True)
class ScalingPoint:
    """Aggregated runs at one n."""

    n: int
    trials: int
    hits: int
    median_evaluations: float
    min_evaluations: int
    median_max_tree_size: float


@dataclass(frozen=True)
class ScalingReport:
    """Outcome of a scaling experiment."""

    experiment_id: str
    points: tuple[ScalingPoint, ...]
    fit: FitResult | None
    """Log-log fit of median evaluations against n, if there are enough points."""

    @property
    def all_hit(self) -> bool:
        """Return whether every run reached the optimum.

        Returns:
            True if every run hit the optimum.
        """
        return all(point.hits == point.trials for point in self.points)


def scaling_experiment(
    uow: AbstractUnitOfWork,
    runner: AbstractTrialRunner,
    writer: AbstractSeriesWriter,
    spec: ExperimentSpec,
) -> ScalingReport:
    """Runs seeded trials for every n, stores the rows and fits the growth of the median runtime.

    Measures other than INV are allowed; runs that stall simply end without hitting the optimum.

    Args:
        uow: The unit of work to store the rows with.
        runner: The runner executing the runs.
        writer: The sink for plot data.
        spec: The experiment spec.

    Returns:
        The per-n aggregates and the fit.
    """
    logger.info("Starting scaling experiment %s", spec.experiment_id)
    results = _run_campaign(runner, spec)

    points = []
    for n, pairs in results.items():
        evaluations = [trial.evaluations for trial, _ in pairs]
        points.append(
            ScalingPoint(
                n=n,
                trials=len(pairs),
                hits=sum(trial.hit_optimum for trial, _ in pairs),
                median_evaluations=float(np.median(evaluations)),
                min_evaluations=min(evaluations),
                median_max_tree_size=float(np.median([trial.max_tree_size for trial, _ in pairs])),
            )
        )
    _store(uow, [trial for pairs in results.values() for trial, _ in pairs])

    median_points = [(float(point.n), point.median_evaluations) for point in points]
    writer.write_series(f"{spec.experiment_id}-median-evaluations", median_points, columns=("n", "median_evaluations"))
    writer.write_series(
        f"{spec.experiment_id}-median-max-tree-size",
        [(float(point.n), point.median_max_tree_size) for point in points],
        columns=("n", "median_max_tree_size"),
    )
    return ScalingReport(spec.experiment_id, tuple(points), _fit_or_none(median_points))


def worst_case_tree(init: InitMode, n: int) -> Tree:
    """Build the worst-case tree of a worst-case initialization.

    Args:
        init: `InitMode.W1` or `InitMode.W2`.
        n: The terminal-set size.

    Returns:
        The worst-case tree.
    """
    return worst_case_w1(n) if init is InitMode.W1 else worst_case_w2(n)


@dataclass(frozen=True)
class StagnationEntry:
    """Stagnation evidence at one n."""

    n: int
    initial_fitness: int
    probability: Fraction | None = None
    """Exact single-step improvement probability (single variant)."""

    improvement_counts: tuple[int, ...] = ()
    """Accepted improvements per trial (multi variant)."""


@dataclass(frozen=True)
class StagnationReport:
    """Outcome of a stagnation experiment."""

    experiment_id: str
    variant: Variant
    entries: tuple[StagnationEntry, ...]

    @property
    def stuck_trials(self) -> int:
        """Return the number of multi-variant trials without any accepted improvement.

        Returns:
            The number of stuck trials.
        """
        return sum(count == 0 for entry in self.entries for count in entry.improvement_counts)

    @property
    def total_trials(self) -> int:
        """Return the number of multi-variant trials.

        Returns:
            The number of trials.
        """
        return sum(len(entry.improvement_counts) for entry in self.entries)


def stagnation_experiment(
    uow: AbstractUnitOfWork,
    runner: AbstractTrialRunner,
    writer: AbstractSeriesWriter,
    spec: ExperimentSpec,
    *,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> StagnationReport:
    """Shows that the worst-case trees trap the algorithm.

    For the single variant the improvement probability of the worst-case tree is enumerated exactly and must be
    zero. For the multi variant budgeted runs are executed and their accepted improvements are counted.

    Args:
        uow: The unit of work to store the rows with.
        runner: The runner executing the multi-variant runs.
        writer: The sink for plot data.
        spec: The experiment spec; `init` must be `w1` or `w2` with a matching measure.
        limit: The enumeration limit of the single-variant check.

    Raises:
        InitMeasureMismatchError: If the init does not trap the measure.
        StagnationViolationError: If a worst-case tree can be improved in a single step.

    Returns:
        The per-n stagnation evidence.
    """
    if spec.measure not in WORST_CASE_MEASURES.get(spec.init, frozenset()):
        raise InitMeasureMismatchError(spec.init, spec.measure)
    logger.info("Starting stagnation experiment %s", spec.experiment_id)

    entries: list[StagnationEntry] = []
    trials: list[Trial] = []
    if spec.variant is Variant.SINGLE:
        for n in tqdm(spec.n_values, desc="Enumerating worst-case neighborhoods", unit="n"):
            tree = worst_case_tree(spec.init, n)
            fitness = evaluate(tree, spec.measure, n)
            probability = exact_improvement_probability(tree, n, spec.measure, limit=limit)
            if probability != 0:
                raise StagnationViolationError(n, spec.measure, probability)  # type: ignore[arg-type]
            entries.append(StagnationEntry(n, fitness.value, probability=Fraction(0)))
            trials.append(
                Trial(
                    experiment_id=spec.experiment_id,
                    kind=spec.kind,
                    measure=spec.measure,
                    variant=spec.variant,
                    init=spec.init,
                    n=n,
                    trial=0,
                    seed=spec.base_seed,
                    evaluations=0,
                    hit_optimum=False,
                    best_fitness=fitness.value,
                    improvements=0,
                    max_tree_size=tree.node_count,
                )
            )
        series = [(float(entry.n), 0.0) for entry in entries]
        writer.write_series(f"{spec.experiment_id}-improvement-probability", series, columns=("n", "probability"))
    else:
        for n, pairs in _run_campaign(runner, spec).items():
            counts = tuple(len(record.improvements) for _, record in pairs)
            entries.append(StagnationEntry(n, pairs[0][1].initial_fitness.value, improvement_counts=counts))
            trials.extend(trial for trial, _ in pairs)
        series = [(float(entry.n), float(np.mean(entry.improvement_counts))) for entry in entries]
        writer.write_series(f"{spec.experiment_id}-mean-improvements", series, columns=("n", "mean_improvements"))

    _store(uow, trials)
    return StagnationReport(spec.experiment_id, spec.variant, tuple(entries))


def inv_bottleneck_tree(n: int) -> Tree:
    """Build the comb with leaf list `n` (n times) followed by `1, 2, ..., n-1`.

    Args:
        n: The terminal-set size.

    Returns:
        A tree whose only single-step INV improvements bring a 1 in front of every n.
    """
    return comb_from_leaf_list([n] * n + list(range(1, n)), n)


@dataclass(frozen=True)
class SweepPoint:
    """Exact probability of one tree family at one n."""

    family: str
    n: int
    probability: Fraction
    by_kind: dict[MutationKind, Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepReport:
    """Outcome of a success-probability sweep."""

    experiment_id: str
    points: tuple[SweepPoint, ...]
    fits: dict[str, FitResult | None]
    """Log-log fit of probability against n, per family."""

    def family(self, name: str) -> list[SweepPoint]:
        """Return the points of one family in n order.

        Args:
            name: The family name.

        Returns:
            The points of the family.
        """
        return [point for point in self.points if point.family == name]


def _sweep_family(name: str, n: int, limit: int) -> SweepPoint:
    """Compute the exact probability of one near-optimal family at one n.

    Args:
        name: The family name.
        n: The terminal-set size.
        limit: The maximum number of neighborhood entries.

    Returns:
        The point, resolved by sub-operation kind.
    """
    if name == INV_BOTTLENECK:
        by_kind = exact_improvement_probability(inv_bottleneck_tree(n), n, Measure.INV, by_kind=True, limit=limit)
    else:
        labels = misplaced_element_pattern(n, n, 1) if name == DELETION_ASSISTED else missing_element_pattern(n, n // 2)
        by_kind = exact_success_probability(comb_from_leaf_list(labels, n), n, by_kind=True, limit=limit)
    return SweepPoint(name, n, sum(by_kind.values(), Fraction(0)), by_kind)  # type: ignore[union-attr,arg-type]


def success_probability_sweep(
    writer: AbstractSeriesWriter,
    spec: ExperimentSpec,
    *,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> SweepReport:
    """Computes exact single-step probabilities of near-optimal trees across n and fits their decay.

    The deletion-assisted family puts an extra n in front of a doubled 1; only a deletion or a substitution of
    that n repairs it. The insert-substitute family leaves out the middle element and doubles its neighbors; only
    an insertion or a substitution repairs it. The INV bottleneck family reports improvement rather than success.

    Args:
        writer: The sink for the probability table and plot data.
        spec: The experiment spec; only `n_values` and `base_seed` are used.
        limit: The enumeration limit per tree.

    Raises:
        EnumerationLimitError: If a neighborhood exceeds the limit.

    Returns:
        The exact probabilities and one fit per family.
    """
    logger.info("Starting success-probability sweep %s", spec.experiment_id)
    families = (DELETION_ASSISTED, INSERT_SUBSTITUTE, INV_BOTTLENECK)
    points = tuple(
        _sweep_family(name, n, limit)
        for name in families
        for n in tqdm(spec.n_values, desc=f"Enumerating {name}", unit="n")
    )

    writer.write_table(
        f"{spec.experiment_id}-probabilities",
        ("family", "n", "numerator", "denominator", "probability"),
        [
            (
                point.family,
                point.n,
                point.probability.numerator,
                point.probability.denominator,
                float(point.probability),
            )
            for point in points
        ],
    )
    fits: dict[str, FitResult | None] = {}
    for name in families:
        series = [(float(point.n), float(point.probability)) for point in points if point.family == name]
        writer.write_series(f"{spec.experiment_id}-{name}", series, columns=("n", "probability"))
        fits[name] = _fit_or_none(series)
    return SweepReport(spec.experiment_id, points, fits)


@dataclass(frozen=True)
class FitnessLevelPoint:
    """Fitness-level bound over the trace of one seeded INV run."""

    n: int
    levels: int
    """Number of non-optimal solutions on the trace."""

    bound: Fraction | None
    """Sum of reciprocal improvement probabilities; `None` if some level cannot be left."""

    stuck_levels: tuple[int, ...]
    evaluations_used: int


def fitness_level_probe(
    runner: AbstractTrialRunner,
    spec: ExperimentSpec,
    *,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> list[FitnessLevelPoint]:
    """Evaluates the fitness-level sum along the accepted solutions of one seeded INV run per n.

    Args:
        runner: The runner executing the runs.
        spec: The experiment spec; the first trial of every n is used and the measure is fixed to INV.
        limit: The enumeration limit per tree.

    Returns:
        One bound per n.
    """
    configs = [spec.run_config(n, 0, measure=Measure.INV, keep_trees=True) for n in spec.n_values]
    points = []
    for config, record in zip(configs, runner.run_trials(configs), strict=True):
        bound = fitness_level_bound(record.accepted_trees, config.n, Measure.INV, limit=limit)
        points.append(
            FitnessLevelPoint(
                n=config.n,
                levels=len(bound.probabilities),
                bound=bound.total,
                stuck_levels=bound.stuck_levels,
                evaluations_used=record.evaluations_used,
            )
        )
        logger.debug("n=%d: %d levels, bound %s", config.n, len(bound.probabilities), bound.total)
    return points


SOLVED = "solved"
EXACT_STAGNATION = "exact stagnation (probability 0)"
STATISTICAL_STAGNATION = "statistical stagnation"
NO_DATA = "no data"


def _cell_status(trials: Sequence[Trial], variant: Variant) -> str:
    """Summarize the rows of one measure and variant.

    Stagnation rows take precedence over scaling and single runs.

    Args:
        trials: The rows of the cell.
        variant: The mutation variant of the cell.

    Returns:
        The status text.
    """
    stagnation = [trial for trial in trials if trial.kind is ExperimentKind.STAGNATE]
    if stagnation:
        if variant is Variant.SINGLE:
            return EXACT_STAGNATION
        stuck = sum(trial.improvements == 0 for trial in stagnation)
        if stuck >= STATISTICAL_STAGNATION_SHARE * len(stagnation):
            return STATISTICAL_STAGNATION
        return f"escaped in {len(stagnation) - stuck}/{len(stagnation)} trials"
    runs = [trial for trial in trials if trial.kind in {ExperimentKind.SCALE, ExperimentKind.RUN}]
    if not runs:
        return NO_DATA
    hits = sum(trial.hit_optimum for trial in runs)
    return SOLVED if hits == len(runs) else f"{SOLVED} {hits}/{len(runs)}"


@dataclass(frozen=True)
class SummaryTable:
    """Observed status per measure and variant."""

    cells: dict[tuple[Measure, Variant], str]

    @property
    def missing(self) -> list[tuple[Measure, Variant]]:
        """Return the cells without any stored trial.

        Returns:
            The `(measure, variant)` pairs without data.
        """
        return [key for key, status in self.cells.items() if status == NO_DATA]

    def render(self) -> str:
        """Render the table as aligned text.

        Returns:
            The rendered table, followed by the list of missing cells if any.
        """
        header = ("measure", *(variant.value for variant in Variant))
        rows = [
            (measure.name, *(self.cells[measure, variant] for variant in Variant)) for measure in Measure
        ]
        widths = [max(len(row[column]) for row in (header, *rows)) for column in range(len(header))]
        lines = [
            " | ".join(value.ljust(width) for value, width in zip(row, widths, strict=True)).rstrip()
            for row in (header, *rows)
        ]
        lines.insert(1, "-+-".join("-" * width for width in widths))
        if self.missing:
            lines.append("")
            lines.append("missing: " + ", ".join(f"{measure.name}/{variant}" for measure, variant in self.missing))
        return "\n".join(lines)


def summary_table(uow: AbstractUnitOfWork) -> SummaryTable:
    """Builds the measure by variant status grid from every stored experiment.

    Args:
        uow: The unit of work to read the rows with.

    Returns:
        The status grid; cells without data are marked and listed as missing.
    """
    grouped: dict[tuple[Measure, Variant], list[Trial]] = defaultdict(list)
    with uow:
        for trial in uow.trials.list_trials():
            grouped[trial.measure, trial.variant].append(trial)
    return SummaryTable({
        (measure, variant): _cell_status(grouped[measure, variant], variant)
        for measure in Measure
        for variant in Variant
    })


@dataclass(frozen=True)
class WorkedExample:
    """All five measures on the worked example, next to their definitional values and the quoted ones."""

    labels: tuple[int, ...]
    n: int
    expressed: tuple[int, ...]
    values: dict[Measure, int]
    naive_values: dict[Measure, int]
    quoted: dict[Measure, int]

    @property
    def discrepancies(self) -> list[Measure]:
        """Return the measures whose computed value differs from the quoted one.

        Returns:
            The measures whose quoted value is wrong.
        """
        return [measure for measure in Measure if self.values[measure] != self.quoted[measure]]


def worked_example() -> WorkedExample:
    """Evaluates the worked example leaf list `(2, 2, 3, 4, 5, 1, 6, 3)` with n = 6.

    Returns:
        The computed, definitional and quoted values.
    """
    permutation = express(WORKED_EXAMPLE_LABELS, WORKED_EXAMPLE_N)
    return WorkedExample(
        labels=WORKED_EXAMPLE_LABELS,
        n=WORKED_EXAMPLE_N,
        expressed=permutation.elements,
        values={measure: MEASURE_FUNCTIONS[measure](permutation) for measure in Measure},
        naive_values={measure: naive_fitness(permutation, measure, WORKED_EXAMPLE_N) for measure in Measure},
        quoted=WORKED_EXAMPLE_QUOTED,
    )


@dataclass(frozen=True)
class Check:
    """One named verification."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Every cross-check of `verify`."""

    example: WorkedExample
    checks: tuple[Check, ...]
    case_reports: tuple[NearOptimalReport, ...]

    @property
    def passed(self) -> bool:
        """Return whether every check and every case report holds.

        Returns:
            True if everything holds.
        """
        return all(check.passed for check in self.checks) and all(report.passed for report in self.case_reports)


def _all_permutations(n: int) -> Iterable[ExpressedPermutation]:
    """Yield every complete permutation of 1..n."""
    return (ExpressedPermutation(elements, n) for elements in permutations(range(1, n + 1)))


def _check_worked_example(example: WorkedExample) -> Check:
    """Check the worked example against its known values."""
    expected = {Measure.INV: 11, Measure.HAM: 1, Measure.RUN: 2, Measure.LAS: 5, Measure.EXC: 4}
    passed = example.values == expected and example.naive_values == expected
    detail = ", ".join(f"{measure.name}={example.values[measure]}" for measure in Measure)
    return Check("worked example", passed, detail)


def _check_exc_against_bfs(n: int) -> Check:
    """Check EXC against the breadth-first transposition distance."""
    mismatches = [p.elements for p in _all_permutations(n) if MEASURE_FUNCTIONS[Measure.EXC](p) != brute_force_exc(p)]
    return Check(f"EXC equals transposition distance on all permutations of n={n}", not mismatches, str(mismatches[:3]))


def _check_measures_against_naive(max_n: int) -> Check:
    """Check every measure against its definition on all small permutations."""
    mismatches = [
        (measure.name, p.elements)
        for n in range(2, max_n + 1)
        for p in _all_permutations(n)
        for measure in Measure
        if MEASURE_FUNCTIONS[measure](p) != naive_fitness(p, measure, n)
    ]
    name = f"all measures equal their definitions on all permutations up to n={max_n}"
    return Check(name, not mismatches, str(mismatches[:3]))


def _check_exact_stagnation(n_values: Sequence[int], limit: int) -> list[Check]:
    """Check that the worst-case trees admit no single-step improvement.

    Args:
        n_values: The sizes to check.
        limit: The maximum number of neighborhood entries.

    Returns:
        One check per worst-case tree, measure and n.
    """
    checks = []
    for init, measures in WORST_CASE_MEASURES.items():
        for measure in sorted(measures):
            for n in n_values:
                probability = exact_improvement_probability(worst_case_tree(init, n), n, measure, limit=limit)
                checks.append(Check(f"{init}/{measure.name} n={n} cannot improve", probability == 0, str(probability)))
    return checks


def verify_all(
    *,
    stagnation_n_values: Sequence[int] = (4, 5, 6, 7, 8),
    case_n_values: Sequence[int] = (3, 4, 5, 6, 7, 8),
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> VerificationReport:
    """Cross-checks the fast computations against brute force and the case analysis against enumeration.

    Args:
        stagnation_n_values: Sizes at which the worst-case trees are enumerated.
        case_n_values: Sizes at which the near-optimal case patterns are enumerated.
        limit: The enumeration limit per tree.

    Returns:
        The full report.
    """
    example = worked_example()
    checks = [
        _check_worked_example(example),
        _check_exc_against_bfs(5),
        _check_measures_against_naive(6),
        *_check_exact_stagnation(stagnation_n_values, limit),
    ]
    case_reports = tuple(verify_lemma1_cases(n) for n in tqdm(case_n_values, desc="Checking near-optimal cases"))
    report = VerificationReport(example, tuple(checks), case_reports)
    logger.info("Verification %s", "passed" if report.passed else "failed")
    return report
