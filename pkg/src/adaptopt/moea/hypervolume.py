"""Two-objective hypervolume by rectangle sweep (minimization convention)."""

from __future__ import annotations

from typing import Sequence

from ..errors import ContractError
from ..problem import ObjectiveVector
from .dominance import dominates


def hypervolume_2d(
    front: Sequence[ObjectiveVector], reference: ObjectiveVector
) -> float:
    """Area dominated by ``front`` and bounded by ``reference``.

    Dominated input points are ignored; every point must strictly dominate the
    reference point.
    """
    if len(reference.values) != 2:
        raise ContractError("hypervolume_2d needs exactly two objectives")
    for point in front:
        if len(point.values) != 2:
            raise ContractError("hypervolume_2d needs exactly two objectives")
        if not dominates(point, reference):
            raise ContractError(
                f"point {point.values} does not dominate the reference "
                f"{reference.values}"
            )

    nondominated = [
        p
        for i, p in enumerate(front)
        if not any(dominates(q, p) for j, q in enumerate(front) if j != i)
    ]
    # Equal points collapse to one rectangle.
    points = sorted({p.values for p in nondominated})
    if not points:
        return 0.0

    r1, r2 = reference.values
    area = 0.0
    for i, (f1, f2) in enumerate(points):
        next_f1 = points[i + 1][0] if i + 1 < len(points) else r1
        area += (next_f1 - f1) * (r2 - f2)
    return area
