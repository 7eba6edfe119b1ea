import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn

import click
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from gpsort import config
from gpsort.application.analysis import DegenerateFitError, FitResult
from gpsort.application.ports.persistence.unit_of_work import AbstractUnitOfWork
from gpsort.application.ports.trial_runner import AbstractTrialRunner
from gpsort.application.services import (
    InitMeasureMismatchError,
    StagnationViolationError,
    fitness_level_probe,
    run_trial,
    scaling_experiment,
    stagnation_experiment,
    success_probability_sweep,
    summary_table,
    verify_all,
)
from gpsort.domain.experiment import ExperimentKind, ExperimentSpec, InvalidExperimentSpecError
from gpsort.domain.model import InitMode, Measure, Variant
from gpsort.domain.oracle import EnumerationLimitError, OracleInputError
from gpsort.domain.tree import PatternTooSmallError
from gpsort.infrastructure.persistence.orm import Base
from gpsort.infrastructure.persistence.unit_of_work import CsvUnitOfWork, SqlAlchemyUnitOfWork
from gpsort.infrastructure.series_writer import FileSeriesWriter
from gpsort.infrastructure.trial_runner import ProcessPoolTrialRunner, SequentialTrialRunner

INIT_CHOICES = {"grow": InitMode.GROW, "perm": InitMode.PERM_COMB, "w1": InitMode.W1, "w2": InitMode.W2}
LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _parse_n_list(value: str) -> tuple[int, ...]:
    """Parse a comma-separated list of sizes."""
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError as e:
        msg = f"--n-list must be comma-separated integers, got {value!r}"
        raise click.BadParameter(msg) from e


def _n_values(n: int | None, n_list: str | None, default: str) -> tuple[int, ...]:
    """Resolve the sizes of a command from `--n` and `--n-list`.

    Raises:
        click.UsageError: If both options are given.

    Returns:
        The sizes, in the given order.
    """
    if n is not None and n_list is not None:
        msg = "Use either --n or --n-list, not both."
        raise click.UsageError(msg)
    if n is not None:
        return (n,)
    return _parse_n_list(n_list or default)


def _make_uow(store: str, out: Path, database_url: str) -> AbstractUnitOfWork:
    """Build the unit of work of the chosen store, creating the tables of a sql store."""
    if store == "sql":
        engine = create_engine(database_url)
        Base.metadata.create_all(engine)
        return SqlAlchemyUnitOfWork(sessionmaker(bind=engine))
    return CsvUnitOfWork(out)


def _make_runner(workers: int) -> AbstractTrialRunner:
    return SequentialTrialRunner() if workers <= 1 else ProcessPoolTrialRunner(max_workers=workers)


def _make_spec(kind: ExperimentKind, n_values: tuple[int, ...], options: dict[str, Any]) -> ExperimentSpec:
    try:
        return ExperimentSpec(
            kind=kind,
            n_values=n_values,
            trials=options["trials"],
            budget=options["budget"],
            base_seed=options["seed"],
            measure=Measure(options["measure"]),
            variant=Variant(options["variant"]),
            init=INIT_CHOICES[options["init"]],
            output_dir=options["out"],
        )
    except InvalidExperimentSpecError as e:
        raise click.UsageError(str(e)) from e


def _fail(message: str) -> NoReturn:
    """Print an error and exit with status 1."""
    click.echo(message, err=True)
    raise SystemExit(1)


def _echo_fit(label: str, fit: FitResult | None) -> None:
    if fit is None:
        click.echo(f"{label}: not enough points for a fit")
    else:
        click.echo(f"{label}: slope {fit.slope:.3f}, intercept {fit.intercept:.3f}, r^2 {fit.r_squared:.4f}")


def experiment_options(*, n_list: str, trials: int, budget: int, measure: str, variant: str, init: str) -> Callable:
    """Build the decorator adding the shared experiment options with command-specific defaults.

    Args:
        n_list: Default `--n-list`.
        trials: Default `--trials`.
        budget: Default `--budget`.
        measure: Default `--measure`.
        variant: Default `--variant`.
        init: Default `--init`.

    Returns:
        The decorator.
    """
    options = [
        click.option("--n", "n", type=click.IntRange(min=2), help="A single terminal-set size."),
        click.option("--n-list", "n_list", help=f"Comma-separated terminal-set sizes. Defaults to '{n_list}'."),
        click.option("--measure", type=click.Choice([m.value for m in Measure]), default=measure, show_default=True),
        click.option("--variant", type=click.Choice([v.value for v in Variant]), default=variant, show_default=True),
        click.option("--init", type=click.Choice(list(INIT_CHOICES)), default=init, show_default=True),
        click.option("--budget", type=int, default=budget, show_default=True, help="Evaluations per run."),
        click.option("--trials", type=int, default=trials, show_default=True, help="Seeded runs per n."),
        click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Base seed."),
        click.option("--workers", type=click.IntRange(min=1), default=config.WORKERS, show_default=True),
        *storage_options(),
    ]

    def decorator(func: Callable) -> Callable:
        for option in reversed(options):
            func = option(func)
        return func

    return decorator


def storage_options() -> list[Callable]:
    """Build the output and store options.

    Returns:
        The option decorators.
    """
    return [
        click.option(
            "--out",
            type=click.Path(file_okay=False, path_type=Path),
            default=Path(config.OUTPUT_DIR),
            show_default=True,
            help="Directory for CSV rows and plot data.",
        ),
        click.option(
            "--store",
            type=click.Choice(["csv", "sql"], case_sensitive=False),
            default="csv",
            show_default=True,
            help="Where trial rows are persisted.",
        ),
        click.option("--database-url", default=config.DATABASE_URL, help="Database URL of the sql store."),
    ]


limit_option = click.option(
    "--limit",
    type=click.IntRange(min=1),
    default=config.ENUMERATION_LIMIT,
    show_default=True,
    help="Maximum neighborhood size to enumerate.",
)


@click.group()
@click.option("--verbose", "-v", count=True, help="Log INFO with -v and DEBUG with -vv.")
def cli(verbose: int) -> None:
    """Experiments with mutation-only GP on sorting."""
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@experiment_options(n_list="8", trials=1, budget=1_000_000, measure="inv", variant="single", init="perm")
def run(n: int | None, n_list: str | None, **options: Any) -> None:
    """Run a single seeded trial and store its row."""
    n_values = _n_values(n, n_list, "8")
    if len(n_values) != 1:
        msg = "run takes a single n."
        raise click.UsageError(msg)
    spec = _make_spec(ExperimentKind.RUN, n_values, options)
    uow = _make_uow(options["store"], spec.output_dir, options["database_url"])
    try:
        trial, record = run_trial(uow, _make_runner(1), spec)
    except PatternTooSmallError as e:
        raise click.UsageError(str(e)) from e

    click.echo(f"experiment {trial.experiment_id}, seed {trial.seed}")
    click.echo(f"fitness {record.initial_fitness.value} -> {record.final_fitness.value} ({trial.measure.name})")
    click.echo(f"evaluations {trial.evaluations}, improvements {trial.improvements}, hit optimum {trial.hit_optimum}")
    click.echo(f"tree size {record.initial_size} initially, {trial.max_tree_size} at most")


@cli.command()
@experiment_options(n_list="4,8,16,32", trials=50, budget=100_000_000, measure="inv", variant="single", init="perm")
def scale(n: int | None, n_list: str | None, **options: Any) -> None:
    """Measure how the runtime grows with n."""
    spec = _make_spec(ExperimentKind.SCALE, _n_values(n, n_list, "4,8,16,32"), options)
    uow = _make_uow(options["store"], spec.output_dir, options["database_url"])
    try:
        report = scaling_experiment(uow, _make_runner(options["workers"]), FileSeriesWriter(spec.output_dir), spec)
    except DegenerateFitError as e:
        _fail(f"Error fitting the runtime: {e}")

    click.echo(f"{'n':>4} {'hits':>9} {'median evals':>14} {'min evals':>11} {'median T_max':>13}")
    for point in report.points:
        click.echo(
            f"{point.n:>4} {point.hits:>4}/{point.trials:<4} {point.median_evaluations:>14.1f}"
            f" {point.min_evaluations:>11} {point.median_max_tree_size:>13.1f}"
        )
    _echo_fit("median evaluations vs n", report.fit)


@cli.command()
@experiment_options(n_list="4,5,6,7,8", trials=20, budget=1_000_000, measure="run", variant="single", init="w1")
@limit_option
def stagnate(n: int | None, n_list: str | None, limit: int, **options: Any) -> None:
    """Show that the worst-case trees trap the algorithm."""
    spec = _make_spec(ExperimentKind.STAGNATE, _n_values(n, n_list, "4,5,6,7,8"), options)
    uow = _make_uow(options["store"], spec.output_dir, options["database_url"])
    try:
        report = stagnation_experiment(
            uow, _make_runner(options["workers"]), FileSeriesWriter(spec.output_dir), spec, limit=limit
        )
    except (InitMeasureMismatchError, PatternTooSmallError) as e:
        raise click.UsageError(str(e)) from e
    except (StagnationViolationError, EnumerationLimitError) as e:
        _fail(f"Error: {e}")

    for entry in report.entries:
        if report.variant is Variant.SINGLE:
            click.echo(
                f"n={entry.n}: initial fitness {entry.initial_fitness}, improvement probability {entry.probability}"
            )
        else:
            stuck = sum(count == 0 for count in entry.improvement_counts)
            click.echo(
                f"n={entry.n}: initial fitness {entry.initial_fitness}, "
                f"{stuck}/{len(entry.improvement_counts)} trials without improvement"
            )
    if report.variant is Variant.MULTI:
        click.echo(f"total: {report.stuck_trials}/{report.total_trials} trials without improvement")


@cli.command()
@click.option("--n-list", "n_list", default="8,16,32,64", show_default=True, help="Comma-separated sizes.")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Base seed.")
@click.option("--fitness-levels", is_flag=True, help="Also bound the runtime of a seeded INV run per n.")
@click.option("--budget", type=int, default=100_000_000, show_default=True, help="Evaluations of the INV runs.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path(config.OUTPUT_DIR))
@limit_option
def probe(n_list: str, seed: int, fitness_levels: bool, budget: int, out: Path, limit: int) -> None:
    """Compute exact single-step success probabilities of near-optimal trees."""
    try:
        spec = ExperimentSpec(
            kind=ExperimentKind.PROBE, n_values=_parse_n_list(n_list), base_seed=seed, budget=budget, output_dir=out
        )
    except InvalidExperimentSpecError as e:
        raise click.UsageError(str(e)) from e

    try:
        report = success_probability_sweep(FileSeriesWriter(out), spec, limit=limit)
        levels = fitness_level_probe(SequentialTrialRunner(), spec, limit=limit) if fitness_levels else []
    except (EnumerationLimitError, DegenerateFitError) as e:
        _fail(f"Error: {e}")

    for family, fit in report.fits.items():
        click.echo(f"{family}:")
        for point in report.family(family):
            click.echo(f"  n={point.n:<4} p={point.probability} ~ {float(point.probability):.3e}")
        _echo_fit("  probability vs n", fit)
    for level in levels:
        bound = "infinite" if level.bound is None else f"{float(level.bound):.4g}"
        click.echo(
            f"fitness levels n={level.n}: {level.levels} levels, bound {bound}, "
            f"run took {level.evaluations_used} evaluations"
        )


@cli.command()
@click.option("--n-list", "n_list", default="3,4,5,6,7,8", show_default=True, help="Sizes of the case patterns.")
@limit_option
def verify(n_list: str, limit: int) -> None:
    """Cross-check the measures and the mutation operator by exhaustive enumeration."""
    try:
        report = verify_all(case_n_values=_parse_n_list(n_list), limit=limit)
    except OracleInputError as e:
        raise click.UsageError(str(e)) from e
    except EnumerationLimitError as e:
        _fail(f"Error: {e}")

    example = report.example
    click.echo(f"worked example {example.labels} (n={example.n}) expresses {example.expressed}")
    for measure in Measure:
        note = f" (commonly quoted as {example.quoted[measure]})" if measure in example.discrepancies else ""
        click.echo(f"  {measure.name} = {example.values[measure]}{note}")

    for check in report.checks:
        click.echo(f"[{'ok' if check.passed else 'FAIL'}] {check.name}" + ("" if check.passed else f": {check.detail}"))
    for case_report in report.case_reports:
        status = "ok" if case_report.passed else "FAIL"
        click.echo(f"[{status}] near-optimal cases n={case_report.n}: {len(case_report.checks)} patterns")
        positions = ", ".join(
            f"{case.case}: {len(case.insert_positions)}" for case in case_report.checks if case.insert_positions
        )
        click.echo(f"    optimal insertion positions ({positions})")
        for case in case_report.checks:
            for violation in case.violations:
                click.echo(f"    {case.case} {case.labels}: {violation}")
        if not case_report.counterexample_rejected:
            click.echo("    substituting the leading 2 of (2, ..., n) by 1 reached the optimum")

    if not report.passed:
        _fail("Verification failed.")


@cli.command()
@click.option("--store", type=click.Choice(["csv", "sql"], case_sensitive=False), default="csv", show_default=True)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path(config.OUTPUT_DIR))
@click.option("--database-url", default=config.DATABASE_URL, help="Database URL of the sql store.")
def summary(store: str, out: Path, database_url: str) -> None:
    """Render the observed status per measure and variant."""
    click.echo(summary_table(_make_uow(store, out, database_url)).render())


if __name__ == "__main__":
    cli()
