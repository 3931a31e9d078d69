import math
from itertools import combinations

import pytest

from adaptopt.errors import ContractError
from adaptopt.moea import (
    associate,
    das_dennis_points,
    hypervolume_2d,
    perpendicular_distance,
)

from .support import vec


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


class TestDasDennis:
    def test_two_objectives_four_divisions(self):
        points = das_dennis_points(2, 4)
        assert points == [
            (0.0, 1.0),
            (0.25, 0.75),
            (0.5, 0.5),
            (0.75, 0.25),
            (1.0, 0.0),
        ]

    def test_three_objectives_three_divisions_count(self):
        assert len(das_dennis_points(3, 3)) == binomial(5, 2)

    def test_two_objectives_one_division(self):
        assert das_dennis_points(2, 1) == [(0.0, 1.0), (1.0, 0.0)]

    def test_counts_and_sums(self):
        for m in range(2, 7):
            for h in range(1, 9):
                points = das_dennis_points(m, h)
                assert len(points) == binomial(h + m - 1, m - 1)
                for point in points:
                    assert abs(sum(point) - 1.0) <= 1e-12
                    assert all(component >= 0 for component in point)

    def test_lexicographic_order_and_uniqueness(self):
        points = das_dennis_points(3, 4)
        assert points == sorted(points)
        assert len(set(points)) == len(points)

    def test_contract_errors(self):
        with pytest.raises(ContractError):
            das_dennis_points(1, 3)
        with pytest.raises(ContractError):
            das_dennis_points(3, 0)


class TestAssociation:
    def test_point_on_axis_attaches_to_axis_direction(self):
        refs = das_dennis_points(2, 2)  # (0,1), (.5,.5), (1,0)
        indices, distances = associate([[0.8, 0.0]], refs)
        assert refs[indices[0]] == (1.0, 0.0)
        assert distances[0] == pytest.approx(0.0, abs=1e-12)

    def test_perpendicular_distance_known_value(self):
        # point (1,1) against direction (1,0): distance is the y component
        assert perpendicular_distance((1.0, 1.0), (1.0, 0.0)) == pytest.approx(1.0)


class TestHypervolume2D:
    def test_w3_front_reference_100_7(self):
        front = [vec(45, 6), vec(60, 3), vec(75, 1), vec(95, 0)]
        assert hypervolume_2d(front, vec(100, 7)) == pytest.approx(230.0, abs=1e-12)

    def test_single_point(self):
        assert hypervolume_2d([vec(0, 0)], vec(1, 1)) == 1.0

    def test_empty_front(self):
        assert hypervolume_2d([], vec(1, 1)) == 0.0

    def test_dominated_points_ignored(self):
        front = [vec(45, 6), vec(60, 3), vec(61, 4)]
        smaller = [vec(45, 6), vec(60, 3)]
        assert hypervolume_2d(front, vec(100, 7)) == hypervolume_2d(
            smaller, vec(100, 7)
        )

    def test_duplicate_points_counted_once(self):
        front = [vec(0, 0), vec(0, 0)]
        assert hypervolume_2d(front, vec(1, 1)) == 1.0

    def test_point_not_dominating_reference_is_contract_error(self):
        with pytest.raises(ContractError, match="101"):
            hypervolume_2d([vec(101, 0)], vec(100, 7))

    def test_order_independent(self):
        front = [vec(60, 3), vec(95, 0), vec(45, 6), vec(75, 1)]
        assert hypervolume_2d(front, vec(100, 7)) == pytest.approx(230.0)
