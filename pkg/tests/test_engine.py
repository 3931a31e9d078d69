import json
from random import Random

import pytest

from adaptopt.errors import ConfigError
from adaptopt.moea import (
    Algorithm,
    AlgorithmConfig,
    associate,
    brute_force_front,
    compute_intercepts,
    das_dennis_points,
    fast_non_dominated_sort,
    nsga2_run,
    nsga3_run,
)
from adaptopt.problem import ObjectiveVector

from .support import (
    W3_FRONT,
    four_objective_problem,
    random_allocation_instance,
    reference_point_coverage,
    w3_problem,
)
from adaptopt.cobot import build_cobot_problem


def nsga2_cfg(**overrides):
    defaults = dict(
        algorithm=Algorithm.NSGA2, population_size=20, generations=30, seed=42
    )
    defaults.update(overrides)
    return AlgorithmConfig(**defaults)


def nsga3_cfg(**overrides):
    defaults = dict(
        algorithm=Algorithm.NSGA3,
        population_size=20,
        generations=30,
        seed=42,
        reference_divisions=12,
    )
    defaults.update(overrides)
    return AlgorithmConfig(**defaults)


class TestConfig:
    def test_odd_population_rejected(self):
        with pytest.raises(ConfigError, match="even"):
            nsga2_cfg(population_size=21)

    def test_negative_generations_rejected(self):
        with pytest.raises(ConfigError):
            nsga2_cfg(generations=-1)

    def test_nsga3_needs_divisions(self):
        with pytest.raises(ConfigError, match="reference_divisions"):
            AlgorithmConfig(
                algorithm=Algorithm.NSGA3, population_size=20, generations=5, seed=1
            )

    def test_rates_bounded(self):
        with pytest.raises(ConfigError):
            nsga2_cfg(crossover_rate=1.5)
        with pytest.raises(ConfigError):
            nsga2_cfg(mutation_rate_per_gene=-0.1)

    def test_algorithm_mismatch_rejected(self):
        with pytest.raises(ConfigError):
            nsga2_run(w3_problem(), nsga3_cfg())


class TestNsga2:
    def test_w3_recovers_exact_front_any_seed(self):
        problem = w3_problem()
        for seed in (0, 1, 7, 42, 123):
            result = nsga2_run(problem, nsga2_cfg(seed=seed))
            assert result.archive.objective_set() == W3_FRONT

    def test_zero_generations_archive_is_initial_front(self):
        problem = w3_problem()
        result = nsga2_run(problem, nsga2_cfg(generations=0, seed=3))
        population_vectors = [ind.objectives for ind in result.final_population]
        fronts = fast_non_dominated_sort(population_vectors)
        expected = {population_vectors[i].values for i in fronts[0]}
        assert result.archive.objective_set() == expected
        assert result.evaluations == 20
        assert len(result.stats) == 1

    def test_same_seed_identical_stats_and_archive(self):
        problem = w3_problem()
        first = nsga2_run(problem, nsga2_cfg())
        second = nsga2_run(problem, nsga2_cfg())
        assert json.dumps(first.stats) == json.dumps(second.stats)
        assert [e.genotype for e in first.archive.sorted_entries()] == [
            e.genotype for e in second.archive.sorted_entries()
        ]

    def test_different_seeds_may_differ_but_front_matches(self):
        problem = w3_problem()
        a = nsga2_run(problem, nsga2_cfg(seed=1))
        b = nsga2_run(problem, nsga2_cfg(seed=2))
        assert a.archive.objective_set() == b.archive.objective_set() == W3_FRONT

    def test_stats_schema_and_monotone_hypervolume(self):
        result = nsga2_run(w3_problem(), nsga2_cfg())
        assert [s["generation"] for s in result.stats] == list(range(31))
        assert [s["evaluations"] for s in result.stats] == [
            20 * (g + 1) for g in range(31)
        ]
        hypervolumes = [s["archive_hypervolume"] for s in result.stats]
        assert all(isinstance(h, float) for h in hypervolumes)
        assert all(a <= b for a, b in zip(hypervolumes, hypervolumes[1:]))

    def test_archive_entries_have_workflows(self):
        result = nsga2_run(w3_problem(), nsga2_cfg())
        assert all(e.workflow is not None for e in result.archive.entries)

    def test_solves_random_instance(self):
        workflow, table = random_allocation_instance(Random(17), 8)
        problem = build_cobot_problem(workflow, table)
        result = nsga2_run(
            problem, nsga2_cfg(population_size=100, generations=100, seed=5)
        )
        assert result.archive.objective_set() == brute_force_front(
            problem
        ).objective_set()


class TestNsga3:
    def test_w3_recovers_exact_front(self):
        problem = w3_problem()
        for seed in (0, 42):
            result = nsga3_run(problem, nsga3_cfg(seed=seed))
            assert result.archive.objective_set() == W3_FRONT

    def test_same_seed_reproducible(self):
        problem = w3_problem()
        first = nsga3_run(problem, nsga3_cfg())
        second = nsga3_run(problem, nsga3_cfg())
        assert json.dumps(first.stats) == json.dumps(second.stats)

    def test_warns_when_population_below_reference_points(self):
        with pytest.warns(UserWarning, match="reference points"):
            nsga3_run(w3_problem(), nsga3_cfg(reference_divisions=30, generations=1))

    def test_degenerate_flat_objective_selection_survives(self):
        # all points share one objective value: intercept fallback must engage
        translated = [[0.0, 1.0], [0.0, 2.0], [0.0, 0.5]]
        intercepts = compute_intercepts(translated, 2)
        assert intercepts[0] == 1.0  # zero-range axis falls back to 1.0
        assert intercepts[1] == pytest.approx(2.0)

    def test_all_identical_objectives_run_completes(self):
        # a table where every assignment has identical objectives
        from adaptopt.cobot import InstanceRow, InstanceTable
        from .support import chain_workflow

        workflow = chain_workflow(4)
        table = InstanceTable(
            tuple(InstanceRow(f"a{i}", 10.0, 10.0, 1) for i in range(4))
        )
        problem = build_cobot_problem(workflow, table)
        result = nsga3_run(problem, nsga3_cfg(generations=10))
        assert len(result.final_population) == 20
        values = {ind.objectives.values[0] for ind in result.final_population}
        assert values == {40.0}


def test_reference_point_coverage_four_objectives():
    """Association of a final NSGA-III population against its reference points."""
    problem = four_objective_problem()
    divisions = 2  # C(5,3) = 10 reference points <= pop 80
    cfg = AlgorithmConfig(
        algorithm=Algorithm.NSGA3,
        population_size=80,
        generations=50,
        seed=11,
        reference_divisions=divisions,
    )
    result = nsga3_run(problem, cfg)
    points = das_dennis_points(4, divisions)
    assert result.reference_points == points
    assert reference_point_coverage(result, points) >= 0.6
