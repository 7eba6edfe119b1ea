from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from gpsort.domain.model import InitConfig, InitMode

JOIN = 0
"""Token of the join function; labels are strictly positive."""

type LabelList = tuple[int, ...]


class InvalidLabelError(Exception):
    """Raised when a leaf label lies outside of [1, n]."""

    def __init__(self, label: int, n: int) -> None:
        """Initialize the exception with the offending label.

        Args:
            label: The out-of-range label.
            n: The terminal-set size.
        """
        super().__init__(f"Leaf label {label} is outside of [1, {n}]")
        self.label = label
        self.n = n


class EmptyLeafListError(Exception):
    """Raised when a tree is requested for an empty leaf list."""

    def __init__(self) -> None:
        """Initialize the exception."""
        super().__init__("A tree needs at least one leaf.")


class PatternTooSmallError(Exception):
    """Raised when n is too small to build a worst-case pattern."""

    def __init__(self, n: int, minimum: int) -> None:
        """Initialize the exception.

        Args:
            n: The requested terminal-set size.
            minimum: The smallest supported terminal-set size.
        """
        super().__init__(f"Pattern needs n >= {minimum}, got n={n}")
        self.n = n
        self.minimum = minimum


@dataclass(frozen=True, slots=True)
class Tree:
    """Immutable binary join-tree in prefix token form.

    Leaves appear in the token sequence in the same left-to-right order as in an in-order traversal, so the leaf list
    is the token sequence with the joins removed. Nodes are identified by their in-order index: the i-th leaf sits at
    `2 * i` and the join at `2 * i + 1` is the lowest common ancestor of leaves `i` and `i + 1`.
    """

    tokens: tuple[int, ...]
    """Prefix token sequence; `JOIN` for internal nodes, labels for leaves."""

    @property
    def node_count(self) -> int:
        """Return the number of nodes.

        Returns:
            The number of nodes in the tree.
        """
        return len(self.tokens)

    @property
    def leaf_count(self) -> int:
        """Return the number of leaves.

        Returns:
            The number of leaves in the tree.
        """
        return (len(self.tokens) + 1) // 2

    def __str__(self) -> str:
        """Render the tree in functional notation, e.g. `J(J(2,5),1)`.

        Returns:
            The rendered tree.
        """
        # Scanning the prefix form right to left leaves both children of a join on top of the stack.
        stack: list[str] = []
        for token in reversed(self.tokens):
            if token == JOIN:
                left = stack.pop()
                right = stack.pop()
                stack.append(f"J({left},{right})")
            else:
                stack.append(str(token))
        return stack[0]


def _check_label(label: int, n: int) -> None:
    """Raise `InvalidLabelError` unless the label lies in [1, n]."""
    if not 1 <= label <= n:
        raise InvalidLabelError(label, n)


def make_leaf(label: int, n: int) -> Tree:
    """Build a single-leaf tree.

    Args:
        label: The leaf label.
        n: The terminal-set size.

    Raises:
        InvalidLabelError: If the label lies outside of [1, n].

    Returns:
        The single-leaf tree.
    """
    _check_label(label, n)
    return Tree((label,))


def join(left: Tree, right: Tree) -> Tree:
    """Join two trees under a new root.

    Args:
        left: The left subtree.
        right: The right subtree.

    Returns:
        The tree `J(left, right)`.
    """
    return Tree((JOIN, *left.tokens, *right.tokens))


def comb_from_leaf_list(labels: Sequence[int], n: int) -> Tree:
    """Realize a leaf sequence as a left-deep comb `J(J(...J(l1,l2)...),lm)`.

    Args:
        labels: The leaf sequence.
        n: The terminal-set size.

    Raises:
        EmptyLeafListError: If `labels` is empty.
        InvalidLabelError: If a label lies outside of [1, n].

    Returns:
        The comb whose in-order leaf list equals `labels`.
    """
    if not labels:
        raise EmptyLeafListError
    for label in labels:
        _check_label(label, n)
    # The prefix form of a left comb is all of its joins followed by all of its leaves.
    return Tree((JOIN,) * (len(labels) - 1) + tuple(labels))


def worst_case_w1(n: int) -> Tree:
    """Build the comb with leaf list `n` (n+1 times) followed by `1, 2, ..., n`.

    Args:
        n: The terminal-set size.

    Raises:
        PatternTooSmallError: If `n < 3`.

    Returns:
        The worst-case tree for RUN and LAS.
    """
    if n < 3:
        raise PatternTooSmallError(n, 3)
    return comb_from_leaf_list([n] * (n + 1) + list(range(1, n + 1)), n)


def worst_case_w2(n: int) -> Tree:
    """Build the comb with leaf list `n` (n+1 times) followed by `2, 3, ..., n-1, 1, n`.

    Args:
        n: The terminal-set size.

    Raises:
        PatternTooSmallError: If `n < 3`.

    Returns:
        The worst-case tree for HAM and EXC.
    """
    if n < 3:
        raise PatternTooSmallError(n, 3)
    return comb_from_leaf_list([n] * (n + 1) + list(range(2, n)) + [1, n], n)


def _grow(n: int, p_join: float, depth_cap: int, rng: np.random.Generator) -> Tree:
    """Grow a random tree top-down.

    Growth points are expanded in prefix order, so the tokens come out in prefix form.

    Args:
        n: The terminal-set size.
        p_join: The probability of a join above the depth cap.
        depth_cap: The depth at which only leaves are drawn.
        rng: The random stream.

    Returns:
        The grown tree.
    """
    tokens: list[int] = []
    pending = [0]  # depths of growth points, in prefix order from the top
    while pending:
        depth = pending.pop()
        if depth < depth_cap and rng.random() < p_join:
            tokens.append(JOIN)
            pending.extend((depth + 1, depth + 1))
        else:
            tokens.append(int(rng.integers(1, n + 1)))
    return Tree(tuple(tokens))


def random_init(cfg: InitConfig, rng: np.random.Generator) -> Tree:
    """Build an initial tree.

    Grow mode draws a join with probability `p_join` at every growth point above the depth cap and a uniform
    label otherwise. Perm-comb mode builds a comb over a uniformly random permutation of 1..n. The worst-case
    modes and explicit mode are deterministic and consume no random draws.

    Args:
        cfg: The initialization config.
        rng: The random stream.

    Returns:
        The initial tree.
    """
    match cfg.mode:
        case InitMode.GROW:
            return _grow(cfg.n, cfg.p_join, cfg.effective_depth_cap, rng)
        case InitMode.PERM_COMB:
            return comb_from_leaf_list([int(label) for label in rng.permutation(cfg.n) + 1], cfg.n)
        case InitMode.W1:
            return worst_case_w1(cfg.n)
        case InitMode.W2:
            return worst_case_w2(cfg.n)
        case InitMode.EXPLICIT:
            return comb_from_leaf_list(cfg.explicit_labels, cfg.n)


def in_order_leaves(tree: Tree) -> LabelList:
    """Return the leaf labels in left-to-right order.

    Args:
        tree: The tree.

    Returns:
        The leaf list.
    """
    return tuple(token for token in tree.tokens if token)


def counts(tree: Tree) -> tuple[int, int]:
    """Return the leaf and node counts of a tree.

    Args:
        tree: The tree.

    Returns:
        The pair `(leaf_count, node_count)`.
    """
    return tree.leaf_count, tree.node_count


def is_valid(tree: Tree, n: int) -> bool:
    """Check that the tokens form one full binary tree with labels in [1, n].

    Args:
        tree: The tree to check.
        n: The terminal-set size.

    Returns:
        True if the tree satisfies every structural invariant.
    """
    open_slots = 1
    for token in tree.tokens:
        if open_slots == 0 or not 0 <= token <= n:
            return False
        open_slots += 1 if token == JOIN else -1
    return open_slots == 0


def subtree_end(tokens: Sequence[int], start: int) -> int:
    """Return the exclusive end of the subtree rooted at a prefix position.

    Args:
        tokens: The prefix token sequence.
        start: The prefix position of the subtree root.

    Returns:
        The position just past the subtree.
    """
    open_slots = 1
    position = start
    while open_slots:
        open_slots += 1 if tokens[position] == JOIN else -1
        position += 1
    return position


def leaf_positions(tokens: Sequence[int]) -> list[int]:
    """Return the prefix positions of the leaves in left-to-right order.

    Args:
        tokens: The prefix token sequence.

    Returns:
        The prefix position of every leaf.
    """
    return [position for position, token in enumerate(tokens) if token]


def in_order_positions(tokens: Sequence[int]) -> list[int]:
    """Map in-order node indices to prefix positions.

    Args:
        tokens: The prefix token sequence.

    Returns:
        A list whose i-th entry is the prefix position of the node with in-order index i.
    """
    order: list[int] = []
    # Joins whose left subtree is still being visited; every leaf but the last closes the innermost one.
    waiting: list[int] = []
    for position, token in enumerate(tokens):
        if token == JOIN:
            waiting.append(position)
            continue
        order.append(position)
        if waiting:
            order.append(waiting.pop())
    return order


def parent_positions(tokens: Sequence[int]) -> list[int]:
    """Return the prefix position of every node's parent.

    Args:
        tokens: The prefix token sequence.

    Returns:
        A list whose i-th entry is the parent position of the node at position i, or -1 for the root.
    """
    parents = [-1] * len(tokens)
    open_joins: list[list[int]] = []  # [position, children still to attach]
    for position, token in enumerate(tokens):
        if open_joins:
            parent = open_joins[-1]
            parents[position] = parent[0]
            parent[1] -= 1
            if parent[1] == 0:
                open_joins.pop()
        if token == JOIN:
            open_joins.append([position, 2])
    return parents
