from collections import Counter
from collections.abc import Callable

import numpy as np
import pytest
from scipy import stats

from gpsort.domain.model import ChildOrder, InitConfig, InitMode, MutationInstance, MutationKind, Variant
from gpsort.domain.mutation import (
    InvalidMutationError,
    apply_mutation,
    delete,
    draw_instance,
    draw_kind,
    hvl_mutate,
    insert,
    sample_k,
    substitute,
)
from gpsort.domain.oracle import enumerate_single_mutations
from gpsort.domain.tree import JOIN, Tree, comb_from_leaf_list, in_order_leaves, is_valid, make_leaf, random_init


@pytest.fixture
def comb() -> Tree:
    # J(J(1,2),3)
    return comb_from_leaf_list((1, 2, 3), 3)


class TestApplyMutation:
    def test_substitute(self, comb: Tree) -> None:
        result = apply_mutation(comb, MutationInstance(MutationKind.SUBSTITUTE, 2, new_label=3))
        assert in_order_leaves(result) == (1, 3, 3)
        assert in_order_leaves(comb) == (1, 2, 3)

    @pytest.mark.parametrize(
        ("target", "order", "expected"),
        [
            (0, ChildOrder.LEFT, (3, 1, 2, 3)),
            (0, ChildOrder.RIGHT, (1, 3, 2, 3)),
            (1, ChildOrder.RIGHT, (1, 2, 3, 3)),
            (3, ChildOrder.LEFT, (3, 1, 2, 3)),
            (3, ChildOrder.RIGHT, (1, 2, 3, 3)),
            (4, ChildOrder.LEFT, (1, 2, 3, 3)),
        ],
        ids=["leaf_left", "leaf_right", "inner_join_right", "root_left", "root_right", "last_leaf_left"],
    )
    def test_insert(self, comb: Tree, target: int, order: ChildOrder, expected: tuple[int, ...]) -> None:
        result = apply_mutation(comb, MutationInstance(MutationKind.INSERT, target, new_label=3, order=order))
        assert in_order_leaves(result) == expected
        assert is_valid(result, 3)

    def test_insert_wraps_the_target_subtree(self, comb: Tree) -> None:
        result = apply_mutation(comb, MutationInstance(MutationKind.INSERT, 1, new_label=3, order=ChildOrder.LEFT))
        assert str(result) == "J(J(3,J(1,2)),3)"

    @pytest.mark.parametrize(
        ("target", "expected"),
        [(0, "J(2,3)"), (2, "J(1,3)"), (4, "J(1,2)")],
        ids=["first", "middle", "last"],
    )
    def test_delete(self, comb: Tree, target: int, expected: str) -> None:
        assert str(apply_mutation(comb, MutationInstance(MutationKind.DELETE, target))) == expected

    def test_delete_single_leaf_is_a_no_op(self) -> None:
        leaf = make_leaf(2, 3)
        assert apply_mutation(leaf, MutationInstance(MutationKind.DELETE, 0)) == leaf

    @pytest.mark.parametrize(
        "instance",
        [
            MutationInstance(MutationKind.SUBSTITUTE, 1, new_label=1),
            MutationInstance(MutationKind.SUBSTITUTE, 6, new_label=1),
            MutationInstance(MutationKind.SUBSTITUTE, 0),
            MutationInstance(MutationKind.INSERT, 5, new_label=1, order=ChildOrder.LEFT),
            MutationInstance(MutationKind.INSERT, 0, new_label=1),
            MutationInstance(MutationKind.DELETE, 3),
        ],
        ids=["substitute_join", "substitute_out_of_range", "substitute_no_label", "insert_out_of_range",
             "insert_no_order", "delete_join"],
    )
    def test_invalid_instance(self, comb: Tree, instance: MutationInstance) -> None:
        with pytest.raises(InvalidMutationError):
            apply_mutation(comb, instance)


class TestRandomSubOperations:
    def test_size_deltas_and_closure(self, rng: np.random.Generator) -> None:
        cfg = InitConfig(6, mode=InitMode.GROW)
        for _ in range(10_000):
            tree = random_init(cfg, rng)
            leaves, nodes = tree.leaf_count, tree.node_count

            substituted = substitute(tree, 6, rng)
            assert (substituted.leaf_count, substituted.node_count) == (leaves, nodes)

            inserted = insert(tree, 6, rng)
            assert (inserted.leaf_count, inserted.node_count) == (leaves + 1, nodes + 2)

            deleted = delete(tree, rng)
            if leaves == 1:
                assert deleted == tree
            else:
                assert (deleted.leaf_count, deleted.node_count) == (leaves - 1, nodes - 2)

            for result in (substituted, inserted, deleted):
                assert is_valid(result, 6)

    def test_delete_keeps_leaf_order(self, rng: np.random.Generator) -> None:
        tree = comb_from_leaf_list((1, 2, 3, 4, 5), 5)
        for _ in range(100):
            leaves = in_order_leaves(delete(tree, rng))
            assert len(leaves) == 4
            assert list(leaves) == sorted(leaves)

    def test_kinds_are_uniform(self, rng: np.random.Generator) -> None:
        observed = Counter(draw_kind(rng) for _ in range(30_000))
        result = stats.chisquare([observed[kind] for kind in MutationKind])
        assert result.pvalue > 1e-4

    @pytest.fixture
    def grown_trees(self) -> list[Tree]:
        rng = np.random.default_rng(2024)
        trees: list[Tree] = []
        while len(trees) < 4:
            tree = random_init(InitConfig(6, mode=InitMode.GROW), rng)
            if 2 <= tree.leaf_count <= 12 and tree not in trees:
                trees.append(tree)
        return trees

    def test_frequencies_match_enumeration(self, grown_trees: list[Tree]) -> None:
        rng = np.random.default_rng(7)
        draws = 60_000
        for tree in grown_trees:
            expected = {entry.instance: entry.probability for entry in enumerate_single_mutations(tree, 6)}
            observed = Counter(draw_instance(draw_kind(rng), tree, 6, rng) for _ in range(draws))
            assert set(observed) <= set(expected)
            instances = list(expected)
            result = stats.chisquare(
                [observed[instance] for instance in instances],
                [float(expected[instance]) * draws for instance in instances],
            )
            assert result.pvalue > 1e-4, in_order_leaves(tree)

    @pytest.mark.parametrize(
        ("kind", "classes"),
        [
            (MutationKind.SUBSTITUTE, lambda tree: tree.leaf_count * 6),
            (MutationKind.INSERT, lambda tree: tree.node_count * 6 * 2),
            (MutationKind.DELETE, lambda tree: tree.leaf_count),
        ],
        ids=["substitute", "insert", "delete"],
    )
    def test_instances_are_uniform_within_a_kind(
        self, grown_trees: list[Tree], kind: MutationKind, classes: Callable[[Tree], int]
    ) -> None:
        rng = np.random.default_rng(11)
        for tree in grown_trees:
            draws = 100 * classes(tree)
            observed = Counter(draw_instance(kind, tree, 6, rng) for _ in range(draws))
            assert len(observed) == classes(tree)
            result = stats.chisquare(list(observed.values()))
            assert result.pvalue > 1e-4, in_order_leaves(tree)


class TestHvlMutate:
    def test_zero_operations_is_identity(self, comb: Tree, rng: np.random.Generator) -> None:
        assert hvl_mutate(comb, 0, 3, rng) == comb

    def test_same_seed_same_offspring(self, comb: Tree) -> None:
        first = hvl_mutate(comb, 5, 3, np.random.default_rng(9))
        second = hvl_mutate(comb, 5, 3, np.random.default_rng(9))
        assert first == second
        assert first.tokens[0] in {JOIN, 1, 2, 3}


class TestSampleK:
    def test_single(self, rng: np.random.Generator) -> None:
        assert {sample_k(Variant.SINGLE, rng) for _ in range(100)} == {1}

    def test_multi_is_one_plus_poisson(self, rng: np.random.Generator) -> None:
        draws = 50_000
        observed = Counter(sample_k(Variant.MULTI, rng) - 1 for _ in range(draws))
        assert min(observed) == 0
        # Pool the tail so that every expected count is large enough.
        tail = 4
        counts = [observed[k] for k in range(tail)] + [sum(v for k, v in observed.items() if k >= tail)]
        probabilities = [stats.poisson.pmf(k, 1.0) for k in range(tail)] + [stats.poisson.sf(tail - 1, 1.0)]
        result = stats.chisquare(counts, [p * draws for p in probabilities])
        assert result.pvalue > 1e-4
