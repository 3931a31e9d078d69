"""Turning a base workflow plus registered plugins into an evaluable problem.

Assembly applies every appender once (registration order, last writer wins),
builds the multi-encoding from the manipulators, and fixes the objective
order: all complex calculators' objectives first (flattened in registration
order), then the primitive calculators'. Internally every objective is
minimized; maximized objectives are negated when collected and un-negated
for reporting.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

from ..errors import (
    AssemblyError,
    EvaluationError,
    MissingPropertyError,
    WorkflowValidationError,
)
from ..workflow import ActionIndexMap, Workflow, enumerate_actions, workflow_violations
from .encoding import Genotype, MultiEncodingSpec, check_genotype
from .plugins import ObjectiveSpec, PluginRegistry

_INF = float("inf")


@dataclass(frozen=True)
class ObjectiveVector:
    """Objective values in fixed order, minimization convention.

    Infeasible vectors carry ``+inf`` sentinels and the number of failed
    calculator preconditions, which constraint-domination compares.
    """

    values: tuple[float, ...]
    feasible: bool = True
    violations: int = 0

    def __post_init__(self):
        if self.feasible and self.violations:
            raise AssemblyError("feasible objective vectors cannot carry violations")


def infeasible_vector(num_objectives: int, violations: int) -> ObjectiveVector:
    return ObjectiveVector((_INF,) * num_objectives, feasible=False, violations=violations)


@dataclass(frozen=True)
class AssembledProblem:
    base_workflow: Workflow
    index_map: ActionIndexMap
    encoding: MultiEncodingSpec
    objectives: tuple[ObjectiveSpec, ...]
    registry: PluginRegistry

    @property
    def num_objectives(self) -> int:
        return len(self.objectives)

    @cached_property
    def _all_calculators(self) -> tuple:
        return (*self.registry.complex_calculators, *self.registry.primitive_calculators)

    @cached_property
    def _signs(self) -> tuple[float, ...]:
        return tuple(-1.0 if spec.is_maximization else 1.0 for spec in self.objectives)

    def reported_values(self, vector: ObjectiveVector) -> tuple[float, ...]:
        """Map internal minimized values back to the declared directions."""
        return tuple(sign * v for sign, v in zip(self._signs, vector.values))


def _warn_on_colliding_keys(registry: PluginRegistry):
    for group_name, group in (
        ("appenders", registry.appenders),
        ("manipulators", registry.manipulators),
    ):
        seen: dict[str, str] = {}
        for plugin in group:
            for key in plugin.property_keys():
                if key in seen and seen[key] != plugin.name:
                    warnings.warn(
                        f"{group_name} '{seen[key]}' and '{plugin.name}' both declare "
                        f"property key '{key}'; later registrations overwrite earlier "
                        "ones",
                        stacklevel=3,
                    )
                seen.setdefault(key, plugin.name)


def assemble(base: Workflow, registry: PluginRegistry) -> AssembledProblem:
    """Build an immutable, evaluable problem from a workflow and plugins."""
    violations = workflow_violations(base)
    if violations:
        raise AssemblyError("base workflow is invalid: " + "; ".join(violations))
    if not registry.manipulators:
        raise AssemblyError("registry needs at least one manipulator")

    index_map = enumerate_actions(base)
    _warn_on_colliding_keys(registry)

    workflow = base
    for appender in registry.appenders:
        try:
            workflow = appender.append(workflow)
        except Exception as exc:
            raise AssemblyError(f"appender '{appender.name}' failed: {exc}") from exc
        bad = workflow_violations(workflow)
        if bad:
            raise AssemblyError(
                f"appender '{appender.name}' produced an invalid workflow: "
                + "; ".join(bad)
            )

    try:
        encoding = MultiEncodingSpec(
            tuple(m.encoding_spec(index_map) for m in registry.manipulators)
        )
    except Exception as exc:
        raise AssemblyError(f"could not assemble encoding: {exc}") from exc

    objectives: list[ObjectiveSpec] = []
    for calc in registry.complex_calculators:
        objectives.extend(calc.objective_specs())
    for calc in registry.primitive_calculators:
        objectives.append(calc.objective_spec())
    if len(objectives) < 2:
        raise AssemblyError("multi-objective problems need at least two objectives")
    names = [spec.name for spec in objectives]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise AssemblyError(f"duplicate objective name(s): {', '.join(duplicates)}")

    return AssembledProblem(
        base_workflow=workflow,
        index_map=index_map,
        encoding=encoding,
        objectives=tuple(objectives),
        registry=registry,
    )


def decode(problem: AssembledProblem, genotype: Genotype) -> Workflow:
    """Apply every manipulator to a private copy of the assembled base workflow."""
    check_genotype(problem.encoding, genotype)
    workflow = problem.base_workflow
    for manipulator, sub_value in zip(problem.registry.manipulators, genotype):
        workflow = manipulator.manipulate(workflow, problem.index_map, sub_value)
    return workflow


def evaluate_workflow(problem: AssembledProblem, workflow: Workflow) -> ObjectiveVector:
    """Run all calculators on an already-manipulated workflow."""
    registry = problem.registry
    failed = 0
    for calc in problem._all_calculators:
        if not calc.check_precondition(workflow):
            failed += 1
    if failed:
        return infeasible_vector(problem.num_objectives, failed)

    values: list[float] = []
    for calc in registry.complex_calculators:
        specs = calc.objective_specs()
        try:
            out = tuple(calc.calculate(workflow, problem.index_map))
        except MissingPropertyError as exc:
            raise EvaluationError(
                f"calculator '{type(calc).__name__}': element '{exc.element_id}' "
                f"is missing property '{exc.key}'"
            ) from exc
        if len(out) != len(specs):
            raise EvaluationError(
                f"calculator '{type(calc).__name__}' returned {len(out)} values "
                f"for {len(specs)} objectives"
            )
        values.extend(float(v) for v in out)
    for calc in registry.primitive_calculators:
        try:
            values.append(float(calc.calculate(workflow, problem.index_map)))
        except MissingPropertyError as exc:
            raise EvaluationError(
                f"calculator '{type(calc).__name__}': element '{exc.element_id}' "
                f"is missing property '{exc.key}'"
            ) from exc

    if any(not math.isfinite(v) for v in values):
        raise EvaluationError(f"calculators produced non-finite objective values: {values}")

    internal = tuple(
        -v if spec.is_maximization else v for spec, v in zip(problem.objectives, values)
    )
    return ObjectiveVector(internal)


def evaluate(problem: AssembledProblem, genotype: Genotype) -> ObjectiveVector:
    """Decode the genotype and evaluate all objectives (pure, deterministic)."""
    return evaluate_workflow(problem, decode(problem, genotype))
