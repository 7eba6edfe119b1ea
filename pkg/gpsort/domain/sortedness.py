from bisect import bisect_left, insort
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import pairwise

from gpsort.domain.model import Direction, Fitness, Measure
from gpsort.domain.tree import Tree, in_order_leaves


class MeasureMismatchError(Exception):
    """Raised when fitness values of different measures are compared."""

    def __init__(self, expected: Measure, actual: Measure) -> None:
        """Initialize the exception.

        Args:
            expected: The measure of the comparison.
            actual: The measure of the offending fitness value.
        """
        super().__init__(f"Cannot compare a {actual.name} fitness under {expected.name}")
        self.expected = expected
        self.actual = actual


@dataclass(frozen=True, slots=True)
class ExpressedPermutation:
    """Duplicate-free sequence over 1..n in first-occurrence order; possibly incomplete."""

    elements: tuple[int, ...]
    """The expressed elements in order."""

    n: int
    """The terminal-set size."""

    def __len__(self) -> int:
        """Return the number of expressed elements.

        Returns:
            The number of expressed elements.
        """
        return len(self.elements)

    @property
    def is_complete(self) -> bool:
        """Return whether every element of 1..n is expressed.

        Returns:
            True if the permutation is complete.
        """
        return len(self.elements) == self.n

    def position(self, element: int) -> int | None:
        """Return the 1-based position of an element.

        Args:
            element: The element to look up.

        Returns:
            The position of the element, or `None` if it is absent.
        """
        try:
            return self.elements.index(element) + 1
        except ValueError:
            return None


def express(labels: Sequence[int], n: int) -> ExpressedPermutation:
    """Keep the first occurrence of every label.

    Args:
        labels: A leaf list.
        n: The terminal-set size.

    Returns:
        The expressed permutation.
    """
    return ExpressedPermutation(tuple(dict.fromkeys(labels)), n)


def inv(permutation: ExpressedPermutation) -> int:
    """Count pairs of present elements that appear in ascending order.

    Args:
        permutation: The expressed permutation.

    Returns:
        The number of correctly ordered pairs.
    """
    seen: list[int] = []
    correct = 0
    for element in permutation.elements:
        correct += bisect_left(seen, element)
        insort(seen, element)
    return correct


def ham(permutation: ExpressedPermutation) -> int:
    """Count elements sitting at their own position.

    Args:
        permutation: The expressed permutation.

    Returns:
        The number of fixed points.
    """
    return sum(1 for position, element in enumerate(permutation.elements, start=1) if position == element)


def run_measure(permutation: ExpressedPermutation) -> int:
    """Count maximal ascending blocks; incomplete permutations score `n + 1`.

    Args:
        permutation: The expressed permutation.

    Returns:
        The number of descents plus one, or the penalty.
    """
    if not permutation.is_complete:
        return permutation.n + 1
    return sum(1 for left, right in pairwise(permutation.elements) if right < left) + 1


def las(permutation: ExpressedPermutation) -> int:
    """Return the length of the longest ascending subsequence.

    Args:
        permutation: The expressed permutation.

    Returns:
        The length of the longest strictly increasing subsequence.
    """
    # tails[k] is the smallest possible last element of an ascending subsequence of length k + 1.
    tails: list[int] = []
    for element in permutation.elements:
        index = bisect_left(tails, element)
        if index == len(tails):
            tails.append(element)
        else:
            tails[index] = element
    return len(tails)


def exc(permutation: ExpressedPermutation) -> int:
    """Return the minimal number of transpositions that sort the permutation; incomplete scores `n + 1`.

    Args:
        permutation: The expressed permutation.

    Returns:
        `n` minus the number of cycles, or the penalty.
    """
    if not permutation.is_complete:
        return permutation.n + 1
    visited = [False] * (permutation.n + 1)
    cycles = 0
    for start in range(1, permutation.n + 1):
        if visited[start]:
            continue
        cycles += 1
        position = start
        while not visited[position]:
            visited[position] = True
            position = permutation.elements[position - 1]
    return permutation.n - cycles


MEASURE_FUNCTIONS: dict[Measure, Callable[[ExpressedPermutation], int]] = {
    Measure.INV: inv,
    Measure.HAM: ham,
    Measure.RUN: run_measure,
    Measure.LAS: las,
    Measure.EXC: exc,
}


def evaluate(tree: Tree, measure: Measure, n: int) -> Fitness:
    """Compute the fitness of a tree.

    Args:
        tree: The tree.
        measure: The sortedness measure.
        n: The terminal-set size.

    Returns:
        The fitness of the tree's expressed permutation.
    """
    permutation = express(in_order_leaves(tree), n)
    return Fitness(MEASURE_FUNCTIONS[measure](permutation), measure)


def better(measure: Measure, a: Fitness, b: Fitness) -> bool:
    """Check whether `a` strictly improves on `b`.

    Args:
        measure: The measure both values belong to.
        a: The candidate fitness.
        b: The reference fitness.

    Raises:
        MeasureMismatchError: If either value belongs to another measure.

    Returns:
        True if `a` is strictly better than `b` in the measure's direction.
    """
    for fitness in (a, b):
        if fitness.measure is not measure:
            raise MeasureMismatchError(measure, fitness.measure)
    if measure.direction is Direction.MAXIMIZE:
        return a.value > b.value
    return a.value < b.value


def is_optimal(tree: Tree, n: int) -> bool:
    """Check whether a tree expresses the complete identity permutation.

    Args:
        tree: The tree.
        n: The terminal-set size.

    Returns:
        True if the expressed permutation is `(1, 2, ..., n)`.
    """
    return express(in_order_leaves(tree), n).elements == tuple(range(1, n + 1))
