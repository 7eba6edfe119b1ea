import math
from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from gpsort.domain.tree import Tree


class InvalidInitConfigError(Exception):
    """Raised when an initialization config violates its invariants."""

    def __init__(self, reason: str) -> None:
        """Initialize the exception with the violated invariant.

        Args:
            reason: A description of the violated invariant.
        """
        super().__init__(f"Invalid initialization config: {reason}")
        self.reason = reason


class InvalidRunConfigError(Exception):
    """Raised when a run config violates its invariants."""

    def __init__(self, reason: str) -> None:
        """Initialize the exception with the violated invariant.

        Args:
            reason: A description of the violated invariant.
        """
        super().__init__(f"Invalid run config: {reason}")
        self.reason = reason


class Direction(StrEnum):
    """Optimization direction of a sortedness measure."""

    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class Measure(StrEnum):
    """The five sortedness measures."""

    INV = "inv"
    """Pairs in correct relative order."""

    HAM = "ham"
    """Elements at their own position."""

    RUN = "run"
    """Maximal ascending blocks."""

    LAS = "las"
    """Length of the longest ascending subsequence."""

    EXC = "exc"
    """Minimal number of transpositions to sort."""

    @property
    def direction(self) -> Direction:
        """Return the optimization direction of the measure.

        Returns:
            `Direction.MINIMIZE` for RUN and EXC, `Direction.MAXIMIZE` otherwise.
        """
        return Direction.MINIMIZE if self in {Measure.RUN, Measure.EXC} else Direction.MAXIMIZE

    def optimum(self, n: int) -> int:
        """Return the value the measure takes on the complete identity permutation.

        Args:
            n: The terminal-set size.

        Returns:
            The optimal value of the measure.
        """
        match self:
            case Measure.INV:
                return n * (n - 1) // 2
            case Measure.HAM | Measure.LAS:
                return n
            case Measure.RUN:
                return 1
            case Measure.EXC:
                return 0

    def penalty(self, n: int) -> int | None:
        """Return the value assigned to incomplete permutations, if the measure penalizes them.

        Args:
            n: The terminal-set size.

        Returns:
            `n + 1` for RUN and EXC, `None` for the measures computed directly on partial lists.
        """
        return n + 1 if self.direction is Direction.MINIMIZE else None


@dataclass(frozen=True, slots=True)
class Fitness:
    """Integer sortedness value tagged with its measure."""

    value: int
    """The measured value."""

    measure: Measure
    """The measure the value was computed with."""


class Variant(StrEnum):
    """Number of mutation sub-operations applied per offspring."""

    SINGLE = "single"
    """Exactly one sub-operation."""

    MULTI = "multi"
    """One plus a Poisson(1) number of sub-operations."""


class InitMode(StrEnum):
    """How the initial tree of a run is built."""

    GROW = "grow"
    PERM_COMB = "perm-comb"
    W1 = "w1"
    W2 = "w2"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class InitConfig:
    """Parameters of the initial tree."""

    n: int
    """The terminal-set size."""

    mode: InitMode = InitMode.PERM_COMB
    """The initialization mode."""

    p_join: float = 0.5
    """Probability of drawing a join node at a growth point (grow mode only)."""

    depth_cap: int | None = None
    """Maximum depth of a grown tree; `None` selects `ceil(log2(n)) + 2`."""

    explicit_labels: tuple[int, ...] = ()
    """The leaf list realized as a comb (explicit mode only)."""

    def __post_init__(self) -> None:
        """Validate the config.

        Raises:
            InvalidInitConfigError: If any invariant is violated.
        """
        if self.n < 2:
            raise InvalidInitConfigError(f"n must be at least 2, got {self.n}")
        if not 0 <= self.p_join < 1:
            raise InvalidInitConfigError(f"p_join must lie in [0, 1), got {self.p_join}")
        if self.depth_cap is not None and self.depth_cap < 1:
            raise InvalidInitConfigError(f"depth_cap must be at least 1, got {self.depth_cap}")
        if self.mode is InitMode.EXPLICIT and not self.explicit_labels:
            raise InvalidInitConfigError("explicit mode requires explicit_labels")

    @property
    def effective_depth_cap(self) -> int:
        """Return the depth cap, falling back to `ceil(log2(n)) + 2`.

        Returns:
            The depth cap used by grow mode.
        """
        return self.depth_cap if self.depth_cap is not None else math.ceil(math.log2(self.n)) + 2


class MutationKind(StrEnum):
    """The three sub-operations of the mutation operator."""

    SUBSTITUTE = "substitute"
    INSERT = "insert"
    DELETE = "delete"


MUTATION_KINDS: tuple[MutationKind, ...] = (MutationKind.SUBSTITUTE, MutationKind.INSERT, MutationKind.DELETE)
"""Kinds in draw order; a uniform draw of an index into this tuple selects the kind."""


class ChildOrder(StrEnum):
    """Side on which an inserted leaf is placed next to the displaced node."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, slots=True)
class MutationInstance:
    """A fully specified single sub-operation."""

    kind: MutationKind
    """The sub-operation kind."""

    target: int
    """In-order index of the target node; leaves sit at even indices."""

    new_label: int | None = None
    """Label of the new leaf (substitute and insert only)."""

    order: ChildOrder | None = None
    """Placement of the new leaf relative to the target (insert only)."""


@dataclass(frozen=True)
class RunConfig:
    """Parameters of a single (1+1) run."""

    n: int
    """The terminal-set size."""

    measure: Measure
    """The fitness measure."""

    variant: Variant
    """Single or multi sub-operation offspring."""

    init: InitConfig
    """The initial tree config."""

    budget: int
    """Maximum number of fitness evaluations, the initial one included."""

    seed: int
    """Seed of the run's random stream."""

    keep_trees: bool = False
    """Whether to keep the initial and every accepted tree in the record."""

    def __post_init__(self) -> None:
        """Validate the config.

        Raises:
            InvalidRunConfigError: If any invariant is violated.
        """
        if self.budget < 1:
            raise InvalidRunConfigError(f"budget must be at least 1, got {self.budget}")
        if self.init.n != self.n:
            raise InvalidRunConfigError(f"init config is for n={self.init.n}, run is for n={self.n}")


@dataclass(frozen=True, slots=True)
class Improvement:
    """An accepted strict improvement."""

    evaluation: int
    """Index of the evaluation that produced the accepted offspring."""

    value: int
    """The accepted fitness value."""

    leaf_count: int
    """Leaf count of the accepted tree."""


@dataclass(frozen=True)
class RunRecord:
    """Trace of a single run."""

    evaluations_used: int
    """Fitness evaluations spent, the initial one included."""

    hit_optimum: bool
    """Whether the complete identity was reached within budget."""

    initial_fitness: Fitness
    """Fitness of the initial tree."""

    final_fitness: Fitness
    """Fitness of the current solution when the run stopped."""

    improvements: tuple[Improvement, ...]
    """Accepted improvements in acceptance order."""

    initial_size: int
    """Node count of the initial tree."""

    max_tree_size: int
    """Largest node count of the current solution over the run."""

    seed: int
    """The seed the run was started with."""

    accepted_trees: tuple["Tree", ...] = ()
    """Current solutions in acceptance order, starting with the initial tree, when requested."""
