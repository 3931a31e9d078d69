"""Generational NSGA-II / NSGA-III loop over an assembled problem.

One seeded generator drives every stochastic choice in a fixed order
(initialization, then per generation: tournaments, crossover, mutation, and
NSGA-III niching ties), so identical configurations reproduce identical
archives and stats. Evaluation is pure and draws no randomness.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from random import Random

from ..errors import ConfigError, EvaluationError
from ..problem import AssembledProblem, Genotype, ObjectiveVector, evaluate
from .archive import ParetoArchive
from .dominance import crowding_distance, fast_non_dominated_sort
from .hypervolume import hypervolume_2d
from .operators import crossover, mutate, random_genotype
from .refpoints import associate, compute_intercepts, das_dennis_points


class Algorithm(Enum):
    NSGA2 = "nsga2"
    NSGA3 = "nsga3"


@dataclass(frozen=True)
class AlgorithmConfig:
    algorithm: Algorithm
    population_size: int
    generations: int
    seed: int
    crossover_rate: float = 0.9
    mutation_rate_per_gene: float | None = None  # None = 1/length per sub-encoding
    reference_divisions: int | None = None  # NSGA-III only

    def __post_init__(self):
        if self.population_size < 2 or self.population_size % 2:
            raise ConfigError(
                f"population_size must be a positive even number, got "
                f"{self.population_size}"
            )
        if self.generations < 0:
            raise ConfigError("generations must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ConfigError("crossover_rate must be in [0, 1]")
        if self.mutation_rate_per_gene is not None and not (
            0.0 <= self.mutation_rate_per_gene <= 1.0
        ):
            raise ConfigError("mutation_rate_per_gene must be in [0, 1] or omitted")
        if self.algorithm is Algorithm.NSGA3:
            if self.reference_divisions is None or self.reference_divisions < 1:
                raise ConfigError("NSGA-III needs reference_divisions >= 1")


@dataclass
class Individual:
    genotype: Genotype
    objectives: ObjectiveVector
    rank: int = 0
    crowding: float = 0.0


@dataclass
class RunResult:
    archive: ParetoArchive
    stats: list[dict]
    final_population: list[Individual]
    evaluations: int
    reference_points: list[tuple[float, ...]] | None = None


def nsga2_run(problem: AssembledProblem, cfg: AlgorithmConfig) -> RunResult:
    if cfg.algorithm is not Algorithm.NSGA2:
        raise ConfigError("nsga2_run requires cfg.algorithm = NSGA2")
    return _run(problem, cfg, _Nsga2Selection(), reference_points=None)


def nsga3_run(problem: AssembledProblem, cfg: AlgorithmConfig) -> RunResult:
    if cfg.algorithm is not Algorithm.NSGA3:
        raise ConfigError("nsga3_run requires cfg.algorithm = NSGA3")
    points = das_dennis_points(problem.num_objectives, cfg.reference_divisions)
    if cfg.population_size < len(points):
        warnings.warn(
            f"population_size {cfg.population_size} is below the "
            f"{len(points)} reference points; niches will stay unfilled",
            stacklevel=2,
        )
    return _run(problem, cfg, _Nsga3Selection(points), reference_points=points)


def run(problem: AssembledProblem, cfg: AlgorithmConfig) -> RunResult:
    if cfg.algorithm is Algorithm.NSGA2:
        return nsga2_run(problem, cfg)
    return nsga3_run(problem, cfg)


def _rank_population(population: list[Individual]) -> list[list[int]]:
    fronts = fast_non_dominated_sort([ind.objectives for ind in population])
    for rank, front in enumerate(fronts):
        members = [population[i] for i in front]
        distances = crowding_distance([ind.objectives for ind in members])
        for ind, distance in zip(members, distances):
            ind.rank = rank
            ind.crowding = distance
    return fronts


def _tournament(population: list[Individual], rng: Random) -> Individual:
    a = population[rng.randrange(len(population))]
    b = population[rng.randrange(len(population))]
    if a.rank != b.rank:
        return a if a.rank < b.rank else b
    if a.crowding != b.crowding:
        return a if a.crowding > b.crowding else b
    return a


class _Nsga2Selection:
    def select(
        self, merged: list[Individual], size: int, rng: Random
    ) -> list[Individual]:
        fronts = _rank_population(merged)
        chosen: list[Individual] = []
        for front in fronts:
            members = [merged[i] for i in front]
            if len(chosen) + len(members) <= size:
                chosen.extend(members)
                if len(chosen) == size:
                    break
                continue
            members.sort(key=lambda ind: -ind.crowding)
            chosen.extend(members[: size - len(chosen)])
            break
        return chosen


class _Nsga3Selection:
    def __init__(self, reference_points: list[tuple[float, ...]]):
        self.reference_points = reference_points
        self.ideal: list[float] | None = None

    def _update_ideal(self, merged: list[Individual]):
        feasible = [ind.objectives.values for ind in merged if ind.objectives.feasible]
        if not feasible:
            return
        if self.ideal is None:
            self.ideal = [math.inf] * len(feasible[0])
        self.ideal = [
            min(z, min(values[m] for values in feasible))
            for m, z in enumerate(self.ideal)
        ]

    def select(
        self, merged: list[Individual], size: int, rng: Random
    ) -> list[Individual]:
        self._update_ideal(merged)
        fronts = _rank_population(merged)
        chosen: list[Individual] = []
        last_front: list[Individual] = []
        for front in fronts:
            members = [merged[i] for i in front]
            if len(chosen) + len(members) <= size:
                chosen.extend(members)
                if len(chosen) == size:
                    return chosen
                continue
            last_front = members
            break
        need = size - len(chosen)

        if not last_front or not last_front[0].objectives.feasible:
            # Infeasible tail: members of one front tie on violation count.
            return chosen + last_front[:need]

        accepted = len(chosen)
        pool = chosen + last_front
        ideal = self.ideal or [0.0] * len(pool[0].objectives.values)
        translated = [
            [v - z for v, z in zip(ind.objectives.values, ideal)] for ind in pool
        ]
        intercepts = compute_intercepts(translated, len(ideal))
        normalized = [
            [t / a for t, a in zip(point, intercepts)] for point in translated
        ]
        assoc, distances = associate(normalized, self.reference_points)

        niche_count = [0] * len(self.reference_points)
        for i in range(accepted):
            niche_count[assoc[i]] += 1
        candidates: dict[int, list[int]] = {}
        for offset in range(len(last_front)):
            candidates.setdefault(assoc[accepted + offset], []).append(offset)

        active = [True] * len(self.reference_points)
        taken = [False] * len(last_front)
        picked = 0
        while picked < need:
            lowest = min(
                count for j, count in enumerate(niche_count) if active[j]
            )
            tied = [
                j
                for j, count in enumerate(niche_count)
                if active[j] and count == lowest
            ]
            j = tied[rng.randrange(len(tied))]
            available = [o for o in candidates.get(j, ()) if not taken[o]]
            if not available:
                active[j] = False
                continue
            if niche_count[j] == 0:
                offset = min(available, key=lambda o: distances[accepted + o])
            else:
                offset = available[rng.randrange(len(available))]
            taken[offset] = True
            chosen.append(last_front[offset])
            niche_count[j] += 1
            picked += 1
        return chosen


def _stats_reference(archive: ParetoArchive) -> ObjectiveVector | None:
    """Fix the hypervolume reference just outside the first nonempty archive."""
    if not archive.entries:
        return None
    values = [entry.objectives.values for entry in archive.entries]
    return ObjectiveVector(
        tuple(max(v[m] for v in values) + 1.0 for m in range(len(values[0])))
    )


def _archive_hypervolume(
    archive: ParetoArchive, reference: ObjectiveVector | None
) -> float | None:
    if reference is None:
        return None
    inside = [
        entry.objectives
        for entry in archive.entries
        if all(v < r for v, r in zip(entry.objectives.values, reference.values))
    ]
    return hypervolume_2d(inside, reference)


def _run(
    problem: AssembledProblem,
    cfg: AlgorithmConfig,
    selection,
    reference_points: list[tuple[float, ...]] | None,
) -> RunResult:
    rng = Random(cfg.seed)
    size = cfg.population_size

    def evaluate_genotype(genotype: Genotype, generation: int, index: int) -> Individual:
        try:
            return Individual(genotype, evaluate(problem, genotype))
        except EvaluationError as exc:
            raise EvaluationError(
                f"generation {generation}, individual {index}: {exc}"
            ) from exc

    population = [
        evaluate_genotype(random_genotype(problem.encoding, rng), 0, i)
        for i in range(size)
    ]
    evaluations = size
    archive = ParetoArchive()
    archive.update((ind.genotype, ind.objectives) for ind in population)

    track_hv = problem.num_objectives == 2
    hv_reference = _stats_reference(archive) if track_hv else None

    def record(generation: int) -> dict:
        return {
            "generation": generation,
            "evaluations": evaluations,
            "archive_size": len(archive),
            "archive_hypervolume": _archive_hypervolume(archive, hv_reference),
        }

    stats = [record(0)]

    for generation in range(1, cfg.generations + 1):
        _rank_population(population)
        offspring: list[Individual] = []
        while len(offspring) < size:
            parent_a = _tournament(population, rng)
            parent_b = _tournament(population, rng)
            child_a, child_b = crossover(
                problem.encoding,
                parent_a.genotype,
                parent_b.genotype,
                cfg.crossover_rate,
                rng,
            )
            for child in (child_a, child_b):
                mutated = mutate(
                    problem.encoding, child, cfg.mutation_rate_per_gene, rng
                )
                offspring.append(
                    evaluate_genotype(mutated, generation, len(offspring))
                )
        evaluations += size
        archive.update((ind.genotype, ind.objectives) for ind in offspring)
        if track_hv and hv_reference is None:
            hv_reference = _stats_reference(archive)
        population = selection.select(population + offspring, size, rng)
        stats.append(record(generation))

    archive.materialize(problem)
    return RunResult(
        archive=archive,
        stats=stats,
        final_population=population,
        evaluations=evaluations,
        reference_points=reference_points,
    )
