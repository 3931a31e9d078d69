from .archive import ArchiveEntry, ParetoArchive
from .dominance import (
    constraint_dominates,
    crowding_distance,
    dominates,
    fast_non_dominated_sort,
    naive_front_partition,
)
from .engine import (
    Algorithm,
    AlgorithmConfig,
    Individual,
    RunResult,
    nsga2_run,
    nsga3_run,
    run,
)
from .hypervolume import hypervolume_2d
from .operators import crossover, mutate, random_genotype
from .oracle import brute_force_front
from .refpoints import (
    associate,
    compute_intercepts,
    das_dennis_points,
    perpendicular_distance,
)

__all__ = [
    "Algorithm",
    "AlgorithmConfig",
    "ArchiveEntry",
    "Individual",
    "ParetoArchive",
    "RunResult",
    "associate",
    "brute_force_front",
    "compute_intercepts",
    "constraint_dominates",
    "crossover",
    "crowding_distance",
    "das_dennis_points",
    "dominates",
    "fast_non_dominated_sort",
    "hypervolume_2d",
    "mutate",
    "naive_front_partition",
    "nsga2_run",
    "nsga3_run",
    "perpendicular_distance",
    "random_genotype",
    "run",
]
