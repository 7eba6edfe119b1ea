import math

import numpy as np

from gpsort.domain.model import MUTATION_KINDS, ChildOrder, MutationInstance, MutationKind, Variant
from gpsort.domain.tree import JOIN, Tree, in_order_positions, leaf_positions, parent_positions, subtree_end

_EXP_MINUS_ONE = math.exp(-1)


class InvalidMutationError(Exception):
    """Raised when a mutation instance does not fit the tree it is applied to."""

    def __init__(self, instance: MutationInstance, reason: str) -> None:
        """Initialize the exception.

        Args:
            instance: The offending instance.
            reason: Why the instance does not apply.
        """
        super().__init__(f"Cannot apply {instance!r}: {reason}")
        self.instance = instance


def _leaf_prefix_position(tree: Tree, instance: MutationInstance) -> int:
    """Return the prefix position of the leaf an instance targets."""
    if instance.target % 2 or not 0 <= instance.target < tree.node_count:
        raise InvalidMutationError(instance, "target is not a leaf")
    return leaf_positions(tree.tokens)[instance.target // 2]


def _apply_substitution(tree: Tree, instance: MutationInstance) -> Tree:
    if instance.new_label is None:
        raise InvalidMutationError(instance, "substitution needs a new label")
    position = _leaf_prefix_position(tree, instance)
    tokens = tree.tokens
    return Tree((*tokens[:position], instance.new_label, *tokens[position + 1 :]))


def _apply_insertion(tree: Tree, instance: MutationInstance) -> Tree:
    """Replace the target subtree by a join of the subtree and the new leaf.

    Raises:
        InvalidMutationError: If the instance lacks a label or an order, or the target is out of range.

    Returns:
        The mutated tree.
    """
    if instance.new_label is None or instance.order is None:
        raise InvalidMutationError(instance, "insertion needs a new label and a child order")
    if not 0 <= instance.target < tree.node_count:
        raise InvalidMutationError(instance, "target is not a node of the tree")
    tokens = tree.tokens
    start = in_order_positions(tokens)[instance.target]
    end = subtree_end(tokens, start)
    displaced = tokens[start:end]
    if instance.order is ChildOrder.LEFT:
        joined = (JOIN, instance.new_label, *displaced)
    else:
        joined = (JOIN, *displaced, instance.new_label)
    return Tree((*tokens[:start], *joined, *tokens[end:]))


def _apply_deletion(tree: Tree, instance: MutationInstance) -> Tree:
    """Replace the parent of the target leaf by its sibling; single-leaf trees stay unchanged."""
    if tree.leaf_count == 1:
        return tree
    tokens = tree.tokens
    leaf = _leaf_prefix_position(tree, instance)
    parent = parent_positions(tokens)[leaf]
    if leaf == parent + 1:
        sibling_start, end = leaf + 1, subtree_end(tokens, leaf + 1)
        sibling = tokens[sibling_start:end]
    else:
        sibling, end = tokens[parent + 1 : leaf], leaf + 1
    return Tree((*tokens[:parent], *sibling, *tokens[end:]))


def apply_mutation(tree: Tree, instance: MutationInstance) -> Tree:
    """Apply a fully specified sub-operation.

    Args:
        tree: The tree to mutate.
        instance: The sub-operation.

    Raises:
        InvalidMutationError: If the instance does not fit the tree.

    Returns:
        The mutated tree; the input tree is left unchanged.
    """
    match instance.kind:
        case MutationKind.SUBSTITUTE:
            return _apply_substitution(tree, instance)
        case MutationKind.INSERT:
            return _apply_insertion(tree, instance)
        case MutationKind.DELETE:
            return _apply_deletion(tree, instance)


def _draw_label(n: int, rng: np.random.Generator) -> int:
    return int(rng.integers(1, n + 1))


def draw_instance(kind: MutationKind, tree: Tree, n: int, rng: np.random.Generator) -> MutationInstance:
    """Draw a uniformly random instance of a sub-operation kind.

    Args:
        kind: The sub-operation kind.
        tree: The tree the instance will be applied to.
        n: The terminal-set size.
        rng: The random stream.

    Returns:
        The drawn instance.
    """
    match kind:
        case MutationKind.SUBSTITUTE:
            target = 2 * int(rng.integers(tree.leaf_count))
            return MutationInstance(kind, target, new_label=_draw_label(n, rng))
        case MutationKind.INSERT:
            target = int(rng.integers(tree.node_count))
            label = _draw_label(n, rng)
            order = ChildOrder.LEFT if rng.integers(2) == 0 else ChildOrder.RIGHT
            return MutationInstance(kind, target, new_label=label, order=order)
        case MutationKind.DELETE:
            if tree.leaf_count == 1:
                return MutationInstance(kind, 0)
            return MutationInstance(kind, 2 * int(rng.integers(tree.leaf_count)))


def substitute(tree: Tree, n: int, rng: np.random.Generator) -> Tree:
    """Relabel a uniformly chosen leaf with a uniformly drawn label.

    Args:
        tree: The tree to mutate.
        n: The terminal-set size.
        rng: The random stream.

    Returns:
        The mutated tree.
    """
    return apply_mutation(tree, draw_instance(MutationKind.SUBSTITUTE, tree, n, rng))


def insert(tree: Tree, n: int, rng: np.random.Generator) -> Tree:
    """Replace a uniformly chosen node `v` by a join of `v` and a new uniformly labeled leaf.

    Args:
        tree: The tree to mutate.
        n: The terminal-set size.
        rng: The random stream.

    Returns:
        The mutated tree.
    """
    return apply_mutation(tree, draw_instance(MutationKind.INSERT, tree, n, rng))


def delete(tree: Tree, rng: np.random.Generator) -> Tree:
    """Replace the parent of a uniformly chosen leaf by the leaf's sibling.

    Single-leaf trees are returned unchanged.

    Args:
        tree: The tree to mutate.
        rng: The random stream.

    Returns:
        The mutated tree.
    """
    # Labels are never drawn for deletions, so any n is fine here.
    return apply_mutation(tree, draw_instance(MutationKind.DELETE, tree, 1, rng))


def draw_kind(rng: np.random.Generator) -> MutationKind:
    """Draw one of the three sub-operation kinds uniformly.

    Args:
        rng: The random stream.

    Returns:
        The drawn kind.
    """
    return MUTATION_KINDS[int(rng.integers(len(MUTATION_KINDS)))]


def hvl_mutate(tree: Tree, k: int, n: int, rng: np.random.Generator) -> Tree:
    """Apply `k` sequential sub-operations, each of a uniformly drawn kind.

    Each sub-operation draws the kind index, then the target index, then the new label, then the child-order bit,
    skipping draws it does not need. A deletion on a single-leaf tree draws nothing.

    Args:
        tree: The tree to mutate.
        k: The number of sub-operations.
        n: The terminal-set size.
        rng: The random stream.

    Returns:
        The mutated tree.
    """
    for _ in range(k):
        tree = apply_mutation(tree, draw_instance(draw_kind(rng), tree, n, rng))
    return tree


def sample_k(variant: Variant, rng: np.random.Generator) -> int:
    """Draw the number of sub-operations for one offspring.

    The multi variant uses `1 + Poisson(1)`, sampled exactly by multiplying uniforms until the product drops to
    `exp(-1)` or below.

    Args:
        variant: The algorithm variant.
        rng: The random stream.

    Returns:
        1 for the single variant, `1 + Poisson(1)` for the multi variant.
    """
    if variant is Variant.SINGLE:
        return 1
    extra = 0
    product = rng.random()
    while product > _EXP_MINUS_ONE:
        extra += 1
        product *= rng.random()
    return 1 + extra
