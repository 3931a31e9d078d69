"""Pareto dominance, constraint-domination, fast non-dominated sorting and
crowding distance (minimization convention throughout)."""

from __future__ import annotations

import math
from typing import Sequence

from ..errors import ContractError
from ..problem import ObjectiveVector


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """True iff ``a`` is no worse everywhere and strictly better somewhere."""
    if len(a.values) != len(b.values):
        raise ContractError(
            f"objective arity mismatch: {len(a.values)} vs {len(b.values)}"
        )
    strictly_better = False
    for x, y in zip(a.values, b.values):
        if x > y:
            return False
        if x < y:
            strictly_better = True
    return strictly_better


def constraint_dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """Feasible beats infeasible; infeasible compared by violation count;
    two feasible vectors fall back to Pareto dominance."""
    if a.feasible != b.feasible:
        return a.feasible
    if not a.feasible:
        return a.violations < b.violations
    return dominates(a, b)


def _sort_key(v: ObjectiveVector) -> tuple:
    return (v.feasible, v.violations, v.values)


def _compare_keys(a: tuple, b: tuple) -> int:
    """+1 if a constraint-dominates b, -1 for the converse, 0 otherwise."""
    a_feasible, a_violations, a_values = a
    b_feasible, b_violations, b_values = b
    if a_feasible != b_feasible:
        return 1 if a_feasible else -1
    if not a_feasible:
        if a_violations == b_violations:
            return 0
        return 1 if a_violations < b_violations else -1
    a_better = b_better = False
    for x, y in zip(a_values, b_values):
        if x < y:
            a_better = True
        elif y < x:
            b_better = True
    if a_better == b_better:
        return 0
    return 1 if a_better else -1


def fast_non_dominated_sort(vectors: Sequence[ObjectiveVector]) -> list[list[int]]:
    """Partition indices into fronts of minimal rank under constraint-domination.

    Identical vectors always share a rank, so the sort runs on distinct
    vectors and expands the result, which is much faster on converged
    populations full of duplicates.
    """
    if not vectors:
        return []

    groups: dict[tuple, list[int]] = {}
    for i, v in enumerate(vectors):
        groups.setdefault(_sort_key(v), []).append(i)
    keys = list(groups)
    n = len(keys)

    dominated_by: list[list[int]] = [[] for _ in range(n)]
    domination_count = [0] * n
    for p in range(n):
        key_p = keys[p]
        for q in range(p + 1, n):
            outcome = _compare_keys(key_p, keys[q])
            if outcome > 0:
                dominated_by[p].append(q)
                domination_count[q] += 1
            elif outcome < 0:
                dominated_by[q].append(p)
                domination_count[p] += 1

    current = [p for p in range(n) if domination_count[p] == 0]
    fronts: list[list[int]] = []
    while current:
        expanded = sorted(i for p in current for i in groups[keys[p]])
        fronts.append(expanded)
        nxt: list[int] = []
        for p in current:
            for q in dominated_by[p]:
                domination_count[q] -= 1
                if domination_count[q] == 0:
                    nxt.append(q)
        current = nxt
    return fronts


def naive_front_partition(vectors: Sequence[ObjectiveVector]) -> list[list[int]]:
    """Reference partition by repeated nondominated filtering (O(M*N^2) per front).

    Kept deliberately independent of :func:`fast_non_dominated_sort` so the two
    can be checked against each other.
    """
    remaining = list(range(len(vectors)))
    fronts: list[list[int]] = []
    while remaining:
        front = [
            i
            for i in remaining
            if not any(
                constraint_dominates(vectors[j], vectors[i]) for j in remaining if j != i
            )
        ]
        fronts.append(front)
        remaining = [i for i in remaining if i not in front]
    return fronts


def crowding_distance(front: Sequence[ObjectiveVector]) -> list[float]:
    """Per-point density estimate along a front; boundary points get ``+inf``.

    Duplicated vectors are kept as-is (they can legitimately receive 0), and an
    objective with zero range contributes nothing.
    """
    size = len(front)
    if size == 0:
        return []
    if size <= 2:
        return [math.inf] * size

    num_objectives = len(front[0].values)
    distance = [0.0] * size
    for m in range(num_objectives):
        order = sorted(range(size), key=lambda i: front[i].values[m])
        low = front[order[0]].values[m]
        high = front[order[-1]].values[m]
        distance[order[0]] = math.inf
        distance[order[-1]] = math.inf
        if high == low:
            continue
        span = high - low
        for pos in range(1, size - 1):
            i = order[pos]
            if distance[i] == math.inf:
                continue
            gap = front[order[pos + 1]].values[m] - front[order[pos - 1]].values[m]
            distance[i] += gap / span
    return distance
