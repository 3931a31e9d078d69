"""Unbounded external archive of feasible nondominated solutions."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..problem import AssembledProblem, Genotype, ObjectiveVector, decode
from ..workflow import Workflow
from .dominance import dominates


@dataclass
class ArchiveEntry:
    genotype: Genotype
    objectives: ObjectiveVector
    workflow: Workflow | None = None


@dataclass
class ParetoArchive:
    """Keeps every feasible nondominated solution seen, deduplicated by genotype.

    Distinct genotypes with equal objective vectors coexist (neither dominates
    the other); a dominated entry is evicted as soon as a dominating solution
    arrives.
    """

    entries: list[ArchiveEntry] = field(default_factory=list)
    _genotypes: set = field(default_factory=set, repr=False)

    def insert(self, genotype: Genotype, objectives: ObjectiveVector) -> bool:
        if not objectives.feasible:
            return False
        if genotype in self._genotypes:
            return False
        survivors = []
        for entry in self.entries:
            if dominates(entry.objectives, objectives):
                return False
            if not dominates(objectives, entry.objectives):
                survivors.append(entry)
            else:
                self._genotypes.discard(entry.genotype)
        survivors.append(ArchiveEntry(genotype, objectives))
        self.entries = survivors
        self._genotypes.add(genotype)
        return True

    def update(self, pairs) -> int:
        added = 0
        for genotype, objectives in pairs:
            if self.insert(genotype, objectives):
                added += 1
        return added

    def objective_set(self) -> set[tuple[float, ...]]:
        return {entry.objectives.values for entry in self.entries}

    def sorted_entries(self) -> list[ArchiveEntry]:
        return sorted(self.entries, key=lambda e: (e.objectives.values, e.genotype))

    def materialize(self, problem: AssembledProblem) -> None:
        """Decode and attach the manipulated workflow of every entry."""
        for entry in self.entries:
            if entry.workflow is None:
                entry.workflow = decode(problem, entry.genotype)

    def __len__(self) -> int:
        return len(self.entries)
