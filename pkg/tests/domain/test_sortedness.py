import numpy as np
import pytest

from gpsort.domain.model import Fitness, Measure
from gpsort.domain.sortedness import (
    ExpressedPermutation,
    MeasureMismatchError,
    better,
    evaluate,
    exc,
    express,
    ham,
    inv,
    is_optimal,
    las,
    run_measure,
)
from gpsort.domain.tree import comb_from_leaf_list

WORKED_EXAMPLE = (2, 2, 3, 4, 5, 1, 6, 3)


class TestExpress:
    def test_keeps_first_occurrences(self) -> None:
        assert express(WORKED_EXAMPLE, 6).elements == (2, 3, 4, 5, 1, 6)

    def test_incomplete(self) -> None:
        permutation = express((3, 3, 1), 4)
        assert permutation.elements == (3, 1)
        assert not permutation.is_complete
        assert len(permutation) == 2
        assert permutation.position(1) == 2
        assert permutation.position(2) is None

    def test_idempotent(self, rng: np.random.Generator) -> None:
        for _ in range(2_000):
            labels = tuple(int(x) for x in rng.integers(1, 9, size=int(rng.integers(1, 20))))
            once = express(labels, 8)
            assert express(once.elements, 8) == once


class TestMeasures:
    @pytest.mark.parametrize(
        ("measure", "expected"),
        [
            (Measure.INV, 11),
            (Measure.HAM, 1),
            (Measure.RUN, 2),
            (Measure.LAS, 5),
            (Measure.EXC, 4),
        ],
        ids=["inv", "ham", "run", "las", "exc"],
    )
    def test_worked_example(self, measure: Measure, expected: int) -> None:
        assert evaluate(comb_from_leaf_list(WORKED_EXAMPLE, 6), measure, 6).value == expected

    @pytest.mark.parametrize(
        ("elements", "expected"),
        [((1, 2, 3), 3), ((3, 2, 1), 0), ((2, 1, 3), 2), ((3, 1), 0), ((1, 3), 1), ((), 0)],
        ids=["sorted", "reversed", "one_swap", "partial_inverted", "partial_sorted", "empty"],
    )
    def test_inv(self, elements: tuple[int, ...], expected: int) -> None:
        assert inv(ExpressedPermutation(elements, 3)) == expected

    def test_ham_on_partial(self) -> None:
        assert ham(ExpressedPermutation((1, 3, 2), 4)) == 1
        assert ham(ExpressedPermutation((1, 2), 4)) == 2

    def test_run(self) -> None:
        assert run_measure(ExpressedPermutation((1, 2, 3, 4), 4)) == 1
        assert run_measure(ExpressedPermutation((4, 3, 2, 1), 4)) == 4
        # descents of the sequence: 4 > 1 only
        assert run_measure(ExpressedPermutation((2, 4, 1, 3), 4)) == 2

    def test_las(self) -> None:
        assert las(ExpressedPermutation((3, 1, 2, 5, 4), 5)) == 3
        assert las(ExpressedPermutation((5,), 5)) == 1

    def test_exc(self) -> None:
        assert exc(ExpressedPermutation((1, 2, 3), 3)) == 0
        assert exc(ExpressedPermutation((2, 1, 3), 3)) == 1
        assert exc(ExpressedPermutation((2, 3, 1), 3)) == 2

    @pytest.mark.parametrize("measure", [Measure.RUN, Measure.EXC], ids=["run", "exc"])
    def test_incomplete_penalty(self, measure: Measure) -> None:
        assert evaluate(comb_from_leaf_list((1, 2, 2), 4), measure, 4).value == 5

    @pytest.mark.parametrize("measure", list(Measure), ids=[m.value for m in Measure])
    def test_identity_is_optimal_value(self, measure: Measure) -> None:
        assert evaluate(comb_from_leaf_list(range(1, 8), 7), measure, 7).value == measure.optimum(7)

    def test_ham_never_exceeds_las(self, rng: np.random.Generator) -> None:
        for _ in range(10_000):
            size = int(rng.integers(1, 11))
            elements = tuple(int(x) + 1 for x in rng.permutation(10)[:size])
            permutation = ExpressedPermutation(elements, 10)
            assert ham(permutation) <= las(permutation)


class TestBetter:
    def test_maximize(self) -> None:
        assert better(Measure.INV, Fitness(3, Measure.INV), Fitness(2, Measure.INV))
        assert not better(Measure.INV, Fitness(2, Measure.INV), Fitness(2, Measure.INV))

    def test_minimize(self) -> None:
        assert better(Measure.EXC, Fitness(1, Measure.EXC), Fitness(2, Measure.EXC))
        assert not better(Measure.EXC, Fitness(3, Measure.EXC), Fitness(2, Measure.EXC))

    def test_mismatch(self) -> None:
        with pytest.raises(MeasureMismatchError):
            better(Measure.INV, Fitness(3, Measure.HAM), Fitness(2, Measure.INV))


class TestIsOptimal:
    @pytest.mark.parametrize(
        ("labels", "expected"),
        [((1, 2, 3), True), ((1, 1, 2, 3, 2), True), ((1, 3, 2), False), ((1, 2), False)],
        ids=["identity", "with_duplicates", "unsorted", "incomplete"],
    )
    def test_is_optimal(self, labels: tuple[int, ...], expected: bool) -> None:
        assert is_optimal(comb_from_leaf_list(labels, 3), 3) is expected
