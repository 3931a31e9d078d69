"""Exhaustive Pareto front for small single-binary-vector problems.

This is the ground truth the search results are checked against, so it keeps
its own naive nondominated filter instead of reusing the archive machinery.
"""

from __future__ import annotations

from ..errors import ContractError
from ..problem import AssembledProblem, EncodingKind, evaluate
from .archive import ArchiveEntry, ParetoArchive

MAX_EXHAUSTIVE_GENES = 24


def brute_force_front(problem: AssembledProblem) -> ParetoArchive:
    """Evaluate every genotype of a single bit-vector encoding (n <= 24)."""
    subs = problem.encoding.subs
    if len(subs) != 1 or subs[0].kind is not EncodingKind.BINARY:
        raise ContractError(
            "brute force enumeration needs exactly one binary sub-encoding"
        )
    n = subs[0].length
    if n > MAX_EXHAUSTIVE_GENES:
        raise ContractError(
            f"{n} genes means 2^{n} evaluations; the exhaustive oracle is "
            f"capped at {MAX_EXHAUSTIVE_GENES}"
        )

    # values -> genotypes, insertion-ordered by enumeration
    by_values: dict[tuple[float, ...], list] = {}
    vectors: dict[tuple[float, ...], object] = {}
    for packed in range(2**n):
        bits = tuple((packed >> bit) & 1 for bit in range(n))
        genotype = (bits,)
        objectives = evaluate(problem, genotype)
        if not objectives.feasible:
            continue
        by_values.setdefault(objectives.values, []).append(genotype)
        vectors[objectives.values] = objectives

    nondominated: list[tuple[float, ...]] = []
    for values in by_values:
        if any(_strictly_better(other, values) for other in nondominated):
            continue
        nondominated = [o for o in nondominated if not _strictly_better(values, o)]
        nondominated.append(values)

    archive = ParetoArchive()
    archive.entries = [
        ArchiveEntry(genotype, vectors[values])
        for values in nondominated
        for genotype in by_values[values]
    ]
    archive._genotypes = {entry.genotype for entry in archive.entries}
    archive.materialize(problem)
    return archive


def _strictly_better(a: tuple[float, ...], b: tuple[float, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b)) and a != b
