"""Human/cobot task allocation as a plugged-in optimization problem.

Every leaf action carries a human execution time, a cobot execution time and
an ordinal ergonomic penalty (1..3, higher is worse). A bit per enumerated
action decides who executes it; the two objectives are the serial makespan of
the chosen executions and the total ergonomic penalty of the actions left to
the human worker.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .errors import AssemblyError, InstanceTableError, MissingPropertyError
from .problem import (
    AssembledProblem,
    ComplexFitnessCalculator,
    EncodingKind,
    MetaInformationAppender,
    ObjectiveSpec,
    PluginRegistry,
    SubEncodingSpec,
    WorkflowManipulator,
    assemble,
)
from .workflow import (
    ActionIndexMap,
    Property,
    ValueType,
    Workflow,
    with_properties,
)

HUMAN_TIME_KEY = "ExecutionTimeHuman"
PENALTY_KEY = "ErgonomicPenaltyHuman"
COBOT_TIME_KEY = "CobotExecutionTime"
COBOT_FLAG_KEY = "IsCobotUtilized"

MAKESPAN_OBJECTIVE = "makespan_seconds"
PENALTY_OBJECTIVE = "ergonomic_penalty"

TABLE_HEADER = ("action_id", "human_time_s", "cobot_time_s", "ergonomic_penalty")


@dataclass(frozen=True)
class InstanceRow:
    action_id: str
    human_time_s: float
    cobot_time_s: float
    ergonomic_penalty: int

    def __post_init__(self):
        for label, value in (
            ("human_time_s", self.human_time_s),
            ("cobot_time_s", self.cobot_time_s),
        ):
            if not math.isfinite(value) or value < 0:
                raise InstanceTableError(
                    f"action '{self.action_id}': {label} must be a finite "
                    f"non-negative number, got {value!r}"
                )
        if self.ergonomic_penalty not in (1, 2, 3):
            raise InstanceTableError(
                f"action '{self.action_id}': ergonomic_penalty must be 1, 2 or 3, "
                f"got {self.ergonomic_penalty!r}"
            )


@dataclass(frozen=True)
class InstanceTable:
    rows: tuple[InstanceRow, ...]

    @cached_property
    def by_id(self) -> dict[str, InstanceRow]:
        out = {}
        for row in self.rows:
            if row.action_id in out:
                raise InstanceTableError(f"duplicate action id '{row.action_id}'")
            out[row.action_id] = row
        return out


def load_instance_table(path: str | Path) -> InstanceTable:
    """Read the CSV metrics table from a file."""
    return parse_instance_table(Path(path).read_text(encoding="utf-8"))


def parse_instance_table(text: str) -> InstanceTable:
    """Parse CSV text (header `action_id,human_time_s,cobot_time_s,ergonomic_penalty`)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InstanceTableError("instance table is empty") from None
    if tuple(h.strip() for h in header) != TABLE_HEADER:
        raise InstanceTableError(
            f"expected header {','.join(TABLE_HEADER)}, got {','.join(header)}"
        )
    rows = []
    for line_no, record in enumerate(reader, start=2):
        if not record or all(not field.strip() for field in record):
            continue
        if len(record) != 4:
            raise InstanceTableError(f"line {line_no}: expected 4 fields, got {len(record)}")
        action_id, human_raw, cobot_raw, penalty_raw = (f.strip() for f in record)
        try:
            human = float(human_raw)
            cobot = float(cobot_raw)
            penalty = int(penalty_raw)
        except ValueError as exc:
            raise InstanceTableError(f"line {line_no}: {exc}") from None
        rows.append(InstanceRow(action_id, human, cobot, penalty))
    table = InstanceTable(tuple(rows))
    table.by_id  # force duplicate detection at load time
    return table


def _leaf_action_ids(workflow: Workflow) -> list[str]:
    return [a.id for a in workflow.actions if not a.children]


class _TableMetricAppender(MetaInformationAppender):
    """Writes one metric property onto every leaf action."""

    def __init__(self, table: InstanceTable, key: str, make_property):
        self.table = table
        self.key = key
        self._make_property = make_property
        self.name = f"append-{key}"
        self.description = f"adds the '{key}' property to every leaf action"

    def property_keys(self) -> tuple[str, ...]:
        return (self.key,)

    def append(self, workflow: Workflow) -> Workflow:
        leaves = _leaf_action_ids(workflow)
        unknown = sorted(set(self.table.by_id) - set(leaves))
        if unknown:
            raise InstanceTableError(
                f"instance table rows for unknown leaf action(s): {', '.join(unknown)}"
            )
        missing = sorted(set(leaves) - set(self.table.by_id))
        if missing:
            raise InstanceTableError(
                f"instance table has no row for action(s): {', '.join(missing)}"
            )
        updates = {
            action_id: (self._make_property(self.table.by_id[action_id]),)
            for action_id in leaves
        }
        return with_properties(workflow, updates)


def metric_appenders(table: InstanceTable) -> list[MetaInformationAppender]:
    """The four appenders of the use case, in their canonical order."""
    return [
        _TableMetricAppender(
            table, HUMAN_TIME_KEY, lambda row: Property.real(HUMAN_TIME_KEY, row.human_time_s)
        ),
        _TableMetricAppender(
            table,
            PENALTY_KEY,
            lambda row: Property.integer(PENALTY_KEY, row.ergonomic_penalty),
        ),
        _TableMetricAppender(
            table, COBOT_TIME_KEY, lambda row: Property.real(COBOT_TIME_KEY, row.cobot_time_s)
        ),
        _TableMetricAppender(
            table, COBOT_FLAG_KEY, lambda row: Property.boolean(COBOT_FLAG_KEY, False)
        ),
    ]


class CobotAssignmentManipulator(WorkflowManipulator):
    """Sets the cobot-utilization flag of action i to bit i of the genotype."""

    name = "cobot-assignment"
    description = "toggles IsCobotUtilized per enumerated action from a bit vector"

    _FLAG = (
        (Property.boolean(COBOT_FLAG_KEY, False),),
        (Property.boolean(COBOT_FLAG_KEY, True),),
    )

    def property_keys(self) -> tuple[str, ...]:
        return (COBOT_FLAG_KEY,)

    def encoding_spec(self, index_map: ActionIndexMap) -> SubEncodingSpec:
        return SubEncodingSpec("cobot_assignment", EncodingKind.BINARY, len(index_map))

    def manipulate(self, workflow: Workflow, index_map: ActionIndexMap, sub_value) -> Workflow:
        ids = index_map.ids
        updates = {ids[i]: self._FLAG[bit] for i, bit in enumerate(sub_value)}
        return with_properties(workflow, updates)


def cobot_flag_manipulator() -> WorkflowManipulator:
    return CobotAssignmentManipulator()


class MakespanErgonomicsCalculator(ComplexFitnessCalculator):
    """Sums execution time of the chosen executor and the human-borne penalty."""

    _EXPECTED = (
        (HUMAN_TIME_KEY, ValueType.REAL),
        (PENALTY_KEY, ValueType.INT),
        (COBOT_TIME_KEY, ValueType.REAL),
        (COBOT_FLAG_KEY, ValueType.BOOL),
    )

    def objective_specs(self) -> tuple[ObjectiveSpec, ...]:
        return (
            ObjectiveSpec(MAKESPAN_OBJECTIVE, is_maximization=False),
            ObjectiveSpec(PENALTY_OBJECTIVE, is_maximization=False),
        )

    def check_precondition(self, workflow: Workflow) -> bool:
        return not self.precondition_failures(workflow)

    def precondition_failures(self, workflow: Workflow) -> list[str]:
        """Action ids lacking one of the four properties (or carrying a bad type)."""
        offending = []
        for action in workflow.actions:
            for key, value_type in self._EXPECTED:
                prop = action.properties.get(key)
                if prop is None or prop.value_type is not value_type:
                    offending.append(action.id)
                    break
        return offending

    def calculate(self, workflow: Workflow, index_map: ActionIndexMap) -> tuple[float, float]:
        makespan = 0.0
        penalty = 0.0
        for action in workflow.actions:
            props = action.properties
            try:
                if props[COBOT_FLAG_KEY].value:
                    makespan += props[COBOT_TIME_KEY].value
                else:
                    makespan += props[HUMAN_TIME_KEY].value
                    penalty += props[PENALTY_KEY].value
            except KeyError as exc:
                raise MissingPropertyError(action.id, exc.args[0]) from None
        return (makespan, penalty)


def makespan_ergonomics_calculator() -> ComplexFitnessCalculator:
    return MakespanErgonomicsCalculator()


def cobot_registry(table: InstanceTable) -> PluginRegistry:
    return PluginRegistry(
        appenders=tuple(metric_appenders(table)),
        manipulators=(cobot_flag_manipulator(),),
        complex_calculators=(makespan_ergonomics_calculator(),),
    )


def build_cobot_problem(workflow: Workflow, table: InstanceTable) -> AssembledProblem:
    """Assemble the full use-case problem for a workflow and its metrics table."""
    try:
        table.by_id
    except InstanceTableError as exc:
        raise AssemblyError(str(exc)) from exc
    return assemble(workflow, cobot_registry(table))
