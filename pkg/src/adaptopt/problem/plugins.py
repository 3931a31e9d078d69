"""The four plugin contracts and their registry.

Appenders enrich a workflow with meta information, manipulators turn a
sub-genotype into a concrete workflow change, and the two calculator kinds
turn a manipulated workflow into objective values. A registry is just the
four ordered lists; registration order is semantically meaningful (it fixes
both the encoding layout and how property writes are sequenced).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

from ..workflow import ActionIndexMap, Workflow
from .encoding import SubEncodingSpec


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    is_maximization: bool = False

    @property
    def direction(self) -> str:
        return "maximize" if self.is_maximization else "minimize"


class MetaInformationAppender(ABC):
    """Writes additional properties into a workflow before optimization starts."""

    name: str = "appender"
    description: str = ""

    @abstractmethod
    def append(self, workflow: Workflow) -> Workflow:
        ...

    def property_keys(self) -> tuple[str, ...]:
        """Keys this appender writes; used to lint colliding registrations."""
        return ()


class WorkflowManipulator(ABC):
    """Applies one sub-genotype to a workflow, producing a solution candidate."""

    name: str = "manipulator"
    description: str = ""

    @abstractmethod
    def encoding_spec(self, index_map: ActionIndexMap) -> SubEncodingSpec:
        ...

    @abstractmethod
    def manipulate(self, workflow: Workflow, index_map: ActionIndexMap, sub_value) -> Workflow:
        ...

    def property_keys(self) -> tuple[str, ...]:
        return ()


class PrimitiveFitnessCalculator(ABC):
    """Computes a single objective value from a manipulated workflow."""

    @abstractmethod
    def objective_spec(self) -> ObjectiveSpec:
        ...

    def check_precondition(self, workflow: Workflow) -> bool:
        return True

    @abstractmethod
    def calculate(self, workflow: Workflow, index_map: ActionIndexMap) -> float:
        ...


class ComplexFitnessCalculator(ABC):
    """Computes several objective values in one workflow traversal."""

    @abstractmethod
    def objective_specs(self) -> Sequence[ObjectiveSpec]:
        ...

    def check_precondition(self, workflow: Workflow) -> bool:
        return True

    @abstractmethod
    def calculate(self, workflow: Workflow, index_map: ActionIndexMap) -> Sequence[float]:
        ...


@dataclass(frozen=True)
class PluginRegistry:
    appenders: tuple[MetaInformationAppender, ...] = ()
    manipulators: tuple[WorkflowManipulator, ...] = ()
    primitive_calculators: tuple[PrimitiveFitnessCalculator, ...] = ()
    complex_calculators: tuple[ComplexFitnessCalculator, ...] = ()
