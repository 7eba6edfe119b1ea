import numpy as np

from gpsort.domain.model import Improvement, RunConfig, RunRecord
from gpsort.domain.mutation import hvl_mutate, sample_k
from gpsort.domain.sortedness import better, evaluate, is_optimal
from gpsort.domain.tree import Tree, random_init


def run(cfg: RunConfig) -> RunRecord:
    """Run the (1+1) algorithm with strict acceptance until the optimum is found or the budget is spent.

    The initial tree costs one evaluation and every offspring costs one more. The run owns its random stream,
    seeded from `cfg.seed`, so identical configs produce identical records.

    Args:
        cfg: The run config.

    Returns:
        The trace of the run.
    """
    rng = np.random.default_rng(cfg.seed)
    tree = random_init(cfg.init, rng)
    fitness = initial_fitness = evaluate(tree, cfg.measure, cfg.n)
    evaluations = 1
    improvements: list[Improvement] = []
    accepted: list[Tree] = [tree] if cfg.keep_trees else []
    max_size = initial_size = tree.node_count
    optimal = is_optimal(tree, cfg.n)

    while not optimal and evaluations < cfg.budget:
        offspring = hvl_mutate(tree, sample_k(cfg.variant, rng), cfg.n, rng)
        candidate = evaluate(offspring, cfg.measure, cfg.n)
        evaluations += 1
        if not better(cfg.measure, candidate, fitness):
            continue
        tree, fitness = offspring, candidate
        improvements.append(Improvement(evaluations, fitness.value, tree.leaf_count))
        if cfg.keep_trees:
            accepted.append(tree)
        max_size = max(max_size, tree.node_count)
        optimal = is_optimal(tree, cfg.n)

    return RunRecord(
        evaluations_used=evaluations,
        hit_optimum=optimal,
        initial_fitness=initial_fitness,
        final_fitness=fitness,
        improvements=tuple(improvements),
        initial_size=initial_size,
        max_tree_size=max_size,
        seed=cfg.seed,
        accepted_trees=tuple(accepted),
    )
