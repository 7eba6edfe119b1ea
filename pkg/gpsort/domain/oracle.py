from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, pairwise

from gpsort.domain.model import ChildOrder, Measure, MutationInstance, MutationKind
from gpsort.domain.mutation import apply_mutation
from gpsort.domain.sortedness import ExpressedPermutation, better, evaluate, is_optimal
from gpsort.domain.tree import LabelList, Tree, comb_from_leaf_list, in_order_leaves

DEFAULT_ENUMERATION_LIMIT = 10_000_000
BRUTE_FORCE_EXC_MAX_N = 6
EXHAUSTIVE_LAS_MAX_LENGTH = 10
CASE_MIN_N = 3
CASE_MAX_N = 16


class EnumerationLimitError(Exception):
    """Raised when a neighborhood is too large to enumerate."""

    def __init__(self, size: int, limit: int) -> None:
        """Initialize the exception.

        Args:
            size: The number of neighborhood entries.
            limit: The enumeration limit.
        """
        super().__init__(f"Neighborhood of {size} entries exceeds the enumeration limit of {limit}")
        self.size = size
        self.limit = limit


class OracleInputError(Exception):
    """Raised when an input is outside of what a brute-force computation supports."""

    def __init__(self, reason: str) -> None:
        """Initialize the exception.

        Args:
            reason: Why the input is not supported.
        """
        super().__init__(f"Unsupported oracle input: {reason}")
        self.reason = reason


@dataclass(frozen=True, slots=True)
class NeighborEntry:
    """One mutation instance, its outcome and its exact probability."""

    instance: MutationInstance
    """The sub-operation."""

    result: Tree
    """The tree the sub-operation produces."""

    probability: Fraction
    """Probability of drawing this instance in a single sub-operation."""


def neighborhood_size(tree: Tree, n: int) -> int:
    """Return the number of entries of a single-step neighborhood.

    Args:
        tree: The tree.
        n: The terminal-set size.

    Returns:
        The number of substitution, insertion and deletion instances.
    """
    return tree.leaf_count * n + tree.node_count * n * 2 + tree.leaf_count


def iter_single_mutations(tree: Tree, n: int) -> Iterator[NeighborEntry]:
    """Yield every single sub-operation instance with its exact probability.

    Substitutions come first (by leaf, then label), then insertions (by node, then label, then order), then
    deletions (by leaf). A single-leaf tree has one no-op deletion carrying the whole deletion mass.

    Args:
        tree: The tree.
        n: The terminal-set size.

    Yields:
        The neighborhood entries.
    """
    leaves, nodes = tree.leaf_count, tree.node_count
    substitution_p = Fraction(1, 3 * leaves * n)
    for leaf in range(leaves):
        for label in range(1, n + 1):
            instance = MutationInstance(MutationKind.SUBSTITUTE, 2 * leaf, new_label=label)
            yield NeighborEntry(instance, apply_mutation(tree, instance), substitution_p)

    insertion_p = Fraction(1, 3 * nodes * n * 2)
    for node in range(nodes):
        for label in range(1, n + 1):
            for order in ChildOrder:
                instance = MutationInstance(MutationKind.INSERT, node, new_label=label, order=order)
                yield NeighborEntry(instance, apply_mutation(tree, instance), insertion_p)

    deletion_p = Fraction(1, 3 * leaves)
    for leaf in range(leaves):
        instance = MutationInstance(MutationKind.DELETE, 2 * leaf)
        yield NeighborEntry(instance, apply_mutation(tree, instance), deletion_p)


def enumerate_single_mutations(
    tree: Tree, n: int, *, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> list[NeighborEntry]:
    """Enumerate the complete single-step neighborhood of a tree.

    Probabilities are exact, so a zero probability computed from the neighborhood is a proof by enumeration.

    Args:
        tree: The tree.
        n: The terminal-set size.
        limit: The maximum number of entries.

    Raises:
        EnumerationLimitError: If the neighborhood has more than `limit` entries.

    Returns:
        The neighborhood entries; their probabilities sum to exactly 1.
    """
    size = neighborhood_size(tree, n)
    if size > limit:
        raise EnumerationLimitError(size, limit)
    return list(iter_single_mutations(tree, n))


def _mass_by_kind(entries: Iterator[NeighborEntry]) -> dict[MutationKind, Fraction]:
    """Sum the probabilities of neighborhood entries per sub-operation kind."""
    mass = dict.fromkeys(MutationKind, Fraction(0))
    for entry in entries:
        mass[entry.instance.kind] += entry.probability
    return mass


def _guarded(tree: Tree, n: int, limit: int) -> Iterator[NeighborEntry]:
    """Iterate a neighborhood after checking its size.

    Raises:
        EnumerationLimitError: If the neighborhood has more than `limit` entries.

    Returns:
        The neighborhood entries.
    """
    size = neighborhood_size(tree, n)
    if size > limit:
        raise EnumerationLimitError(size, limit)
    return iter_single_mutations(tree, n)


def exact_success_probability(
    tree: Tree,
    n: int,
    *,
    by_kind: bool = False,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> Fraction | dict[MutationKind, Fraction]:
    """Return the exact probability that one sub-operation produces an optimal tree.

    Optimality does not depend on the measure, so no measure is needed.

    Args:
        tree: The tree.
        n: The terminal-set size.
        by_kind: Whether to resolve the probability by sub-operation kind.
        limit: The maximum number of neighborhood entries.

    Raises:
        EnumerationLimitError: If the neighborhood is too large.

    Returns:
        The total probability, or a mapping from kind to probability if `by_kind` is set.
    """
    successes = (entry for entry in _guarded(tree, n, limit) if is_optimal(entry.result, n))
    mass = _mass_by_kind(successes)
    return mass if by_kind else sum(mass.values(), Fraction(0))


def exact_improvement_probability(
    tree: Tree,
    n: int,
    measure: Measure,
    *,
    by_kind: bool = False,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> Fraction | dict[MutationKind, Fraction]:
    """Return the exact probability that one sub-operation strictly improves the fitness.

    Args:
        tree: The tree.
        n: The terminal-set size.
        measure: The sortedness measure.
        by_kind: Whether to resolve the probability by sub-operation kind.
        limit: The maximum number of neighborhood entries.

    Raises:
        EnumerationLimitError: If the neighborhood is too large.

    Returns:
        The total probability, or a mapping from kind to probability if `by_kind` is set.
    """
    current = evaluate(tree, measure, n)
    improving = (
        entry
        for entry in _guarded(tree, n, limit)
        if better(measure, evaluate(entry.result, measure, n), current)
    )
    mass = _mass_by_kind(improving)
    return mass if by_kind else sum(mass.values(), Fraction(0))


@dataclass(frozen=True)
class FitnessLevelBound:
    """Sum of reciprocal improvement probabilities over a chain of fitness levels."""

    probabilities: tuple[Fraction, ...]
    """Exact single-step improvement probability of each level's representative tree."""

    @property
    def stuck_levels(self) -> tuple[int, ...]:
        """Return the indices of levels that cannot be left in a single step.

        Returns:
            The indices of the levels with improvement probability zero.
        """
        return tuple(index for index, probability in enumerate(self.probabilities) if probability == 0)

    @property
    def total(self) -> Fraction | None:
        """Return the bound, or `None` if some level cannot be left.

        Returns:
            The exact sum of reciprocals.
        """
        if self.stuck_levels:
            return None
        return sum((1 / probability for probability in self.probabilities), Fraction(0))


def fitness_level_bound(
    trees: Sequence[Tree], n: int, measure: Measure, *, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> FitnessLevelBound:
    """Evaluate the fitness-level sum over representative trees, one per level.

    Args:
        trees: Representative trees in level order.
        n: The terminal-set size.
        measure: The sortedness measure.
        limit: The maximum number of neighborhood entries per tree.

    Returns:
        The per-level probabilities and their reciprocal sum.
    """
    probabilities = tuple(
        exact_improvement_probability(tree, n, measure, limit=limit)
        for tree in trees
        if not is_optimal(tree, n)
    )
    return FitnessLevelBound(probabilities)  # type: ignore[arg-type]


def _require_complete(permutation: ExpressedPermutation) -> None:
    """Raise `OracleInputError` unless every label of 1..n is expressed."""
    if not permutation.is_complete:
        raise OracleInputError(f"permutation {permutation.elements} is incomplete for n={permutation.n}")


def brute_force_exc(permutation: ExpressedPermutation) -> int:
    """Find the minimal number of transpositions by breadth-first search over permutations.

    Args:
        permutation: A complete permutation with `n <= 6`.

    Raises:
        OracleInputError: If the permutation is incomplete or too long.

    Returns:
        The transposition distance to the identity.
    """
    _require_complete(permutation)
    if permutation.n > BRUTE_FORCE_EXC_MAX_N:
        raise OracleInputError(f"n={permutation.n} exceeds {BRUTE_FORCE_EXC_MAX_N}")
    target = tuple(range(1, permutation.n + 1))
    distance = {permutation.elements: 0}
    queue = deque([permutation.elements])
    while queue:
        current = queue.popleft()
        if current == target:
            return distance[current]
        for i, j in combinations(range(permutation.n), 2):
            swapped = list(current)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            neighbor = tuple(swapped)
            if neighbor not in distance:
                distance[neighbor] = distance[current] + 1
                queue.append(neighbor)
    msg = "identity unreachable"
    raise AssertionError(msg)


def _naive_las(elements: tuple[int, ...]) -> int:
    """Find the longest ascending subsequence by trying every subsequence, longest first."""
    if len(elements) > EXHAUSTIVE_LAS_MAX_LENGTH:
        raise OracleInputError(f"exhaustive LAS supports at most {EXHAUSTIVE_LAS_MAX_LENGTH} elements")
    for size in range(len(elements), 0, -1):
        for subsequence in combinations(elements, size):
            if all(a < b for a, b in pairwise(subsequence)):
                return size
    return 0


def _naive_exc(elements: tuple[int, ...]) -> int:
    """Count the transpositions of a left-to-right selection sort."""
    # Swap the correct element into each position from the left; every swap fixes at least one element.
    current = list(elements)
    swaps = 0
    for position in range(len(current)):
        wanted = position + 1
        if current[position] != wanted:
            other = current.index(wanted)
            current[position], current[other] = current[other], current[position]
            swaps += 1
    return swaps


def naive_fitness(permutation: ExpressedPermutation, measure: Measure, n: int) -> int:
    """Compute a measure straight from its definition.

    INV scans all pairs, HAM and RUN follow their definitions, LAS searches all subsequences and EXC sorts by
    explicit swaps.

    Args:
        permutation: The expressed permutation.
        measure: The sortedness measure.
        n: The terminal-set size.

    Raises:
        OracleInputError: If LAS is requested for more than 10 elements.

    Returns:
        The measure value.
    """
    elements = permutation.elements
    complete = len(elements) == n
    match measure:
        case Measure.INV:
            position = {element: index for index, element in enumerate(elements)}
            return sum(
                1
                for i, j in combinations(range(1, n + 1), 2)
                if i in position and j in position and position[i] < position[j]
            )
        case Measure.HAM:
            return sum(1 for x in range(1, n + 1) if permutation.position(x) == x)
        case Measure.RUN:
            if not complete:
                return n + 1
            blocks = 1
            for previous, element in pairwise(elements):
                if element < previous:
                    blocks += 1
            return blocks
        case Measure.LAS:
            return _naive_las(elements)
        case Measure.EXC:
            return _naive_exc(elements) if complete else n + 1


def missing_element_pattern(n: int, missing: int, *, run: int = 2) -> LabelList:
    """Build the leaf list of 1..n without `missing`, repeating the missing element's neighbors.

    Args:
        n: The terminal-set size.
        missing: The element left out.
        run: How often each neighbor of the missing element occurs.

    Returns:
        The leaf list.
    """
    labels: list[int] = []
    for element in range(1, n + 1):
        if element != missing:
            labels.extend([element] * (run if abs(element - missing) == 1 else 1))
    return tuple(labels)


def misplaced_element_pattern(n: int, element: int, before: int, *, run: int = 2) -> LabelList:
    """Build the leaf list of 1..n with an extra copy of `element` directly in front of `before`.

    The elements adjacent to the misplaced copy are repeated `run` times.

    Args:
        n: The terminal-set size.
        element: The misplaced element.
        before: The element the misplaced copy precedes.
        run: How often each neighbor of the misplaced copy occurs.

    Returns:
        The leaf list.
    """
    labels: list[int] = []
    for current in range(1, n + 1):
        if current == before:
            labels.append(element)
        labels.extend([current] * (run if current in {before - 1, before} else 1))
    return tuple(labels)


@dataclass(frozen=True)
class CaseCheck:
    """Outcome of one near-optimal pattern."""

    case: str
    """Human-readable description of the pattern."""

    labels: LabelList
    """The leaf list of the pattern."""

    expected_kinds: frozenset[MutationKind]
    """Kinds the case analysis says can reach the optimum."""

    observed_kinds: frozenset[MutationKind]
    """Kinds with at least one optimum-producing instance."""

    substitutions: frozenset[tuple[int, int]]
    """Successful substitutions as (leaf index, new label)."""

    deletions: frozenset[int]
    """Successful deletions as leaf indices."""

    inserted_labels: frozenset[int]
    """Labels of successful insertions."""

    insert_positions: frozenset[LabelList] = field(default=frozenset())
    """Distinct leaf lists produced by successful insertions, one per insertion position."""

    violations: tuple[str, ...] = field(default=())
    """Failed assertions; empty when the case holds."""

    @property
    def passed(self) -> bool:
        """Return whether every assertion of the case holds.

        Returns:
            True if there are no violations.
        """
        return not self.violations


@dataclass(frozen=True)
class NearOptimalReport:
    """Case-by-case verification of the near-optimal patterns for one n."""

    n: int
    """The terminal-set size."""

    checks: tuple[CaseCheck, ...]
    """One entry per constructed pattern."""

    counterexample_rejected: bool
    """Whether substituting the leading 2 of (2, 3, ..., n) by 1 indeed fails to reach the optimum."""

    @property
    def passed(self) -> bool:
        """Return whether every case and the counterexample guard hold.

        Returns:
            True if the whole report holds.
        """
        return self.counterexample_rejected and all(check.passed for check in self.checks)


def _check_case(  # noqa: PLR0913
    case: str,
    labels: LabelList,
    n: int,
    *,
    expected_kinds: set[MutationKind],
    required_substitutions: set[tuple[int, int]],
    required_insert_label: int | None,
    required_deletion: int | None,
    max_substitutions: int | None,
    insert_position_count: int,
) -> CaseCheck:
    """Enumerate the neighborhood of one pattern and compare its optimal neighbors with the case analysis.

    Returns:
        The check, with one violation message per failed assertion.
    """
    tree = comb_from_leaf_list(labels, n)
    optimal_entries = [entry for entry in iter_single_mutations(tree, n) if is_optimal(entry.result, n)]
    successes = [entry.instance for entry in optimal_entries]
    positions = frozenset(
        in_order_leaves(entry.result) for entry in optimal_entries if entry.instance.kind is MutationKind.INSERT
    )
    observed = frozenset(instance.kind for instance in successes)
    substitutions = frozenset(
        (instance.target // 2, instance.new_label or 0)
        for instance in successes
        if instance.kind is MutationKind.SUBSTITUTE
    )
    deletions = frozenset(instance.target // 2 for instance in successes if instance.kind is MutationKind.DELETE)
    inserted = frozenset(instance.new_label or 0 for instance in successes if instance.kind is MutationKind.INSERT)

    violations: list[str] = []
    if observed != expected_kinds:
        violations.append(f"kinds {sorted(observed)} != expected {sorted(expected_kinds)}")
    if missing := required_substitutions - substitutions:
        violations.append(f"substitutions {sorted(missing)} do not reach the optimum")
    if max_substitutions is not None and len(substitutions) > max_substitutions:
        violations.append(f"{len(substitutions)} optimal substitutions exceed {max_substitutions}")
    if len(deletions) > 1:
        violations.append(f"{len(deletions)} optimal deletions exceed 1")
    if required_deletion is not None and required_deletion not in deletions:
        violations.append(f"deleting leaf {required_deletion} does not reach the optimum")
    if required_insert_label is not None and inserted != {required_insert_label}:
        violations.append(f"optimal insertions use labels {sorted(inserted)}, expected {{{required_insert_label}}}")
    if len(positions) != insert_position_count:
        violations.append(f"optimal insertions at {len(positions)} positions, expected {insert_position_count}")

    return CaseCheck(
        case=case,
        labels=labels,
        expected_kinds=frozenset(expected_kinds),
        observed_kinds=observed,
        substitutions=substitutions,
        deletions=deletions,
        inserted_labels=inserted,
        insert_positions=positions,
        violations=tuple(violations),
    )


def _missing_element_checks(n: int) -> Iterator[CaseCheck]:
    """Check one missing-element pattern per element of 1..n.

    Yields:
        The case checks.
    """
    both = {MutationKind.INSERT, MutationKind.SUBSTITUTE}
    for missing in range(1, n + 1):
        labels = missing_element_pattern(n, missing)
        if missing == 1:
            # the first of the leading 2s becomes the 1
            required = {(0, 1)}
        elif missing == n:
            required = {(len(labels) - 1, n)}
        else:
            rightmost_lower = labels.index(missing + 1) - 1
            required = {(rightmost_lower, missing), (rightmost_lower + 1, missing)}
        yield _check_case(
            f"missing {missing}",
            labels,
            n,
            expected_kinds=both,
            required_substitutions=required,
            required_insert_label=missing,
            required_deletion=None,
            max_substitutions=2,
            # after either copy of the predecessor; 1 has no predecessor and only fits in front
            insert_position_count=1 if missing == 1 else 2,
        )


def _misplaced_element_checks(n: int) -> Iterator[CaseCheck]:
    """Check the misplaced-element patterns, in front of 1 and in the interior.

    Yields:
        The case checks.
    """
    both = {MutationKind.DELETE, MutationKind.SUBSTITUTE}
    for element in range(3, n + 1):
        labels = misplaced_element_pattern(n, element, 1)
        yield _check_case(
            f"{element} misplaced before 1",
            labels,
            n,
            expected_kinds=both,
            required_substitutions={(0, 1)},
            required_insert_label=None,
            required_deletion=0,
            max_substitutions=2,
            insert_position_count=0,
        )
    for before in range(2, n - 1):
        for element in range(before + 2, n + 1):
            labels = misplaced_element_pattern(n, element, before)
            position = labels.index(element)
            # Any label already expressed in front of the misplaced copy also works, so no upper bound here.
            yield _check_case(
                f"{element} misplaced before {before}",
                labels,
                n,
                expected_kinds=both,
                required_substitutions={(position, before - 1), (position, before)},
                required_insert_label=None,
                required_deletion=position,
                max_substitutions=None,
                insert_position_count=0,
            )


def verify_lemma1_cases(n: int) -> NearOptimalReport:
    """Check every near-optimal pattern of the single-step case analysis by enumeration.

    Missing-element patterns leave one element out and double its neighbors; they must be repairable by
    insertion and substitution only. Misplaced-element patterns put an extra copy of an element `x` in front of
    the element it blocks; they must be repairable by deletion and substitution only.

    Args:
        n: The terminal-set size, between 3 and 16.

    Raises:
        OracleInputError: If n is out of range.

    Returns:
        The case-by-case report.
    """
    if not CASE_MIN_N <= n <= CASE_MAX_N:
        raise OracleInputError(f"n={n} outside of [{CASE_MIN_N}, {CASE_MAX_N}]")
    checks = (*_missing_element_checks(n), *_misplaced_element_checks(n))

    guard_tree = comb_from_leaf_list(tuple(range(2, n + 1)), n)
    guard_result = apply_mutation(guard_tree, MutationInstance(MutationKind.SUBSTITUTE, 0, new_label=1))
    return NearOptimalReport(n=n, checks=checks, counterexample_rejected=not is_optimal(guard_result, n))
