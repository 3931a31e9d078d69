"""Structured reference points on the unit simplex and the geometry used by
reference-point based environmental selection."""

from __future__ import annotations

import math
from typing import Sequence

from ..errors import ContractError


def das_dennis_points(num_objectives: int, divisions: int) -> list[tuple[float, ...]]:
    """All weight vectors with components k/divisions summing to 1, in
    ascending lexicographic order; count is C(divisions + M - 1, M - 1)."""
    if num_objectives < 2:
        raise ContractError("need at least two objectives")
    if divisions < 1:
        raise ContractError("need at least one division")

    points: list[tuple[float, ...]] = []
    partial = [0] * num_objectives

    def fill(position: int, remaining: int):
        if position == num_objectives - 1:
            partial[position] = remaining
            points.append(tuple(k / divisions for k in partial))
            return
        for k in range(remaining + 1):
            partial[position] = k
            fill(position + 1, remaining - k)

    fill(0, divisions)
    return points


def perpendicular_distance(point: Sequence[float], direction: Sequence[float]) -> float:
    """Distance from ``point`` to the ray through the origin along ``direction``."""
    norm_sq = sum(d * d for d in direction)
    dot = sum(p * d for p, d in zip(point, direction))
    scale = dot / norm_sq
    return math.sqrt(
        sum((p - scale * d) ** 2 for p, d in zip(point, direction))
    )


def associate(
    normalized: Sequence[Sequence[float]], reference_points: Sequence[Sequence[float]]
) -> tuple[list[int], list[float]]:
    """Closest reference direction per point (ties broken by lower index)."""
    indices: list[int] = []
    distances: list[float] = []
    for point in normalized:
        best_index = 0
        best_distance = math.inf
        for j, ref in enumerate(reference_points):
            d = perpendicular_distance(point, ref)
            if d < best_distance:
                best_distance = d
                best_index = j
        indices.append(best_index)
        distances.append(best_distance)
    return indices, distances


def solve_linear(matrix: list[list[float]], rhs: list[float]) -> list[float]:
    """Gaussian elimination with partial pivoting; raises on singular systems."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot][col]) < 1e-12:
            raise ArithmeticError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        for row in range(col + 1, n):
            factor = a[row][col] / a[col][col]
            if factor:
                for k in range(col, n + 1):
                    a[row][k] -= factor * a[col][k]
    out = [0.0] * n
    for row in range(n - 1, -1, -1):
        acc = a[row][n] - sum(a[row][k] * out[k] for k in range(row + 1, n))
        out[row] = acc / a[row][row]
    return out


def compute_intercepts(
    translated: Sequence[Sequence[float]], num_objectives: int
) -> list[float]:
    """Axis intercepts of the hyperplane through the extreme points.

    Extreme points are chosen per objective with an achievement scalarizing
    function. Degenerate geometry (singular system, non-positive intercepts,
    repeated extremes) falls back to the per-objective maximum, and a still
    degenerate axis falls back to 1.0.
    """
    fallback = [
        max((point[m] for point in translated), default=0.0)
        for m in range(num_objectives)
    ]
    fallback = [x if x > 1e-12 else 1.0 for x in fallback]
    if not translated:
        return fallback

    extremes: list[int] = []
    for m in range(num_objectives):
        weights = [1e-6] * num_objectives
        weights[m] = 1.0
        best_index = 0
        best_asf = math.inf
        for i, point in enumerate(translated):
            asf = max(value / w for value, w in zip(point, weights))
            if asf < best_asf:
                best_asf = asf
                best_index = i
        extremes.append(best_index)

    if len(set(extremes)) < num_objectives:
        return fallback
    try:
        plane = solve_linear(
            [list(translated[i]) for i in extremes], [1.0] * num_objectives
        )
    except ArithmeticError:
        return fallback
    intercepts = []
    for coef in plane:
        if coef <= 1e-12:
            return fallback
        intercepts.append(1.0 / coef)
    return intercepts
