import itertools
import math

import pytest

from adaptopt.cobot import (
    COBOT_FLAG_KEY,
    MakespanErgonomicsCalculator,
    cobot_registry,
)
from adaptopt.errors import AssemblyError, EncodingError, EvaluationError
from adaptopt.problem import (
    AssembledProblem,
    ComplexFitnessCalculator,
    EncodingKind,
    MetaInformationAppender,
    ObjectiveSpec,
    PluginRegistry,
    PrimitiveFitnessCalculator,
    SubEncodingSpec,
    WorkflowManipulator,
    assemble,
    decode,
    evaluate,
)
from adaptopt.workflow import Property, get_property, set_property

from .support import W3_ROWS, w3_table, w3_workflow


class CountingPrimitive(PrimitiveFitnessCalculator):
    """Counts actions carrying a marker property; direction is configurable."""

    def __init__(self, name="marker_count", maximization=False):
        self._spec = ObjectiveSpec(name, maximization)

    def objective_spec(self):
        return self._spec

    def calculate(self, workflow, index_map):
        return float(
            sum(
                1
                for a in workflow.actions
                if a.properties.get("marker") and a.properties["marker"].value
            )
        )


class MarkerManipulator(WorkflowManipulator):
    name = "marker"
    description = "sets a boolean marker per action"

    def encoding_spec(self, index_map):
        return SubEncodingSpec("marker", EncodingKind.BINARY, len(index_map))

    def manipulate(self, workflow, index_map, sub_value):
        for i, bit in enumerate(sub_value):
            workflow = set_property(
                workflow, index_map.id_at(i), Property.boolean("marker", bit == 1)
            )
        return workflow


class KeyWriter(MetaInformationAppender):
    def __init__(self, name, key, value):
        self.name = name
        self.key = key
        self.value = value
        self.description = f"writes {key}"

    def property_keys(self):
        return (self.key,)

    def append(self, workflow):
        for action in workflow.actions:
            workflow = set_property(
                workflow, action.id, Property.integer(self.key, self.value)
            )
        return workflow


def two_objective_registry(**overrides):
    defaults = dict(
        appenders=(),
        manipulators=(MarkerManipulator(),),
        primitive_calculators=(
            CountingPrimitive("markers_min"),
            CountingPrimitive("markers_max", maximization=True),
        ),
    )
    defaults.update(overrides)
    return PluginRegistry(**defaults)


class TestAssemble:
    def test_cobot_registry_shape(self, w3, table):
        problem = assemble(w3, cobot_registry(table))
        assert len(problem.encoding.subs) == 1
        sub = problem.encoding.subs[0]
        assert sub.kind is EncodingKind.BINARY and sub.length == 3
        assert [(o.name, o.direction) for o in problem.objectives] == [
            ("makespan_seconds", "minimize"),
            ("ergonomic_penalty", "minimize"),
        ]

    def test_no_appenders_keeps_base(self, w3):
        problem = assemble(w3, two_objective_registry())
        assert problem.base_workflow == w3

    def test_two_appenders_same_key_last_writer_wins(self, w3):
        registry = two_objective_registry(
            appenders=(KeyWriter("first", "shared", 1), KeyWriter("second", "shared", 2))
        )
        with pytest.warns(UserWarning, match="shared"):
            problem = assemble(w3, registry)
        assert get_property(problem.base_workflow, "a1", "shared").value == 2

    def test_index_map_from_original_workflow(self, w3, table):
        problem = assemble(w3, cobot_registry(table))
        assert problem.index_map.ids == ("a1", "a2", "a3")

    def test_duplicate_objective_names_rejected(self, w3):
        registry = two_objective_registry(
            primitive_calculators=(CountingPrimitive("x"), CountingPrimitive("x")),
        )
        with pytest.raises(AssemblyError, match="duplicate objective name"):
            assemble(w3, registry)

    def test_needs_manipulator(self, w3):
        with pytest.raises(AssemblyError, match="manipulator"):
            assemble(w3, two_objective_registry(manipulators=()))

    def test_needs_two_objectives(self, w3):
        registry = two_objective_registry(
            primitive_calculators=(CountingPrimitive("only"),)
        )
        with pytest.raises(AssemblyError, match="two objectives"):
            assemble(w3, registry)

    def test_failing_appender_named(self, w3):
        class Exploding(MetaInformationAppender):
            name = "exploding"

            def append(self, workflow):
                raise RuntimeError("boom")

        registry = two_objective_registry(appenders=(Exploding(),))
        with pytest.raises(AssemblyError, match="exploding"):
            assemble(w3, registry)

    def test_objective_order_complex_then_primitive(self, w3, table):
        registry = cobot_registry(table)
        registry = PluginRegistry(
            appenders=registry.appenders,
            manipulators=registry.manipulators,
            complex_calculators=registry.complex_calculators,
            primitive_calculators=(CountingPrimitive("extra"),),
        )
        problem = assemble(w3, registry)
        assert [o.name for o in problem.objectives] == [
            "makespan_seconds",
            "ergonomic_penalty",
            "extra",
        ]

    def test_objective_order_stable_across_assemblies(self, w3, table):
        names = [
            tuple(o.name for o in assemble(w3, cobot_registry(table)).objectives)
            for _ in range(3)
        ]
        assert len(set(names)) == 1


class TestDecode:
    @pytest.fixture
    def problem(self, w3, table) -> AssembledProblem:
        return assemble(w3, cobot_registry(table))

    def test_all_zero_keeps_flags_false(self, problem):
        decoded = decode(problem, ((0, 0, 0),))
        for action in decoded.actions:
            assert action.properties[COBOT_FLAG_KEY].value is False

    def test_101_sets_first_and_third(self, problem):
        decoded = decode(problem, ((1, 0, 1),))
        flags = [a.properties[COBOT_FLAG_KEY].value for a in decoded.actions]
        assert flags == [True, False, True]

    def test_wrong_length_is_encoding_error(self, problem):
        with pytest.raises(EncodingError):
            decode(problem, ((1, 0),))

    def test_base_workflow_never_mutated(self, problem):
        base_before = problem.base_workflow
        snapshot = base_before
        for bits in itertools.product((0, 1), repeat=3):
            decode(problem, (bits,))
        assert problem.base_workflow == snapshot
        assert problem.base_workflow is base_before

    def test_decode_isolation(self, problem):
        first = decode(problem, ((1, 0, 1),))
        second = decode(problem, ((0, 0, 0),))
        assert [a.properties[COBOT_FLAG_KEY].value for a in second.actions] == [
            False,
            False,
            False,
        ]
        assert second == decode(problem, ((0, 0, 0),))
        assert first != second


class TestEvaluate:
    @pytest.fixture
    def problem(self, w3, table) -> AssembledProblem:
        return assemble(w3, cobot_registry(table))

    def test_w3_examples(self, problem):
        assert evaluate(problem, ((0, 0, 0),)).values == (45.0, 6.0)
        assert evaluate(problem, ((1, 1, 1),)).values == (95.0, 0.0)
        assert evaluate(problem, ((1, 0, 0),)).values == (60.0, 3.0)

    def test_exhaustive_closed_form(self, problem):
        # Oracle: direct sums over the instance rows for all 8 assignments.
        rows = {row.action_id: row for row in W3_ROWS}
        ids = ("a1", "a2", "a3")
        for bits in itertools.product((0, 1), repeat=3):
            makespan = sum(
                rows[i].cobot_time_s if b else rows[i].human_time_s
                for i, b in zip(ids, bits)
            )
            penalty = sum(
                0 if b else rows[i].ergonomic_penalty for i, b in zip(ids, bits)
            )
            vector = evaluate(problem, (bits,))
            assert vector.feasible
            assert vector.values == (makespan, float(penalty))

    def test_pure_function(self, problem):
        genotype = ((1, 1, 0),)
        assert evaluate(problem, genotype) == evaluate(problem, genotype)

    def test_precondition_failure_gives_sentinels(self, w3):
        # No appenders: the calculator's required properties are missing.
        registry = PluginRegistry(
            manipulators=(MarkerManipulator(),),
            complex_calculators=(MakespanErgonomicsCalculator(),),
        )
        problem = assemble(w3, registry)
        vector = evaluate(problem, ((0, 0, 0),))
        assert not vector.feasible
        assert vector.violations == 1
        assert all(math.isinf(v) and v > 0 for v in vector.values)

    def test_maximized_objective_negated_internally(self, w3):
        problem = assemble(w3, two_objective_registry())
        vector = evaluate(problem, ((1, 1, 0),))
        assert vector.values == (2.0, -2.0)
        assert problem.reported_values(vector) == (2.0, 2.0)

    def test_calculator_error_names_element_and_key(self, w3, table):
        class Sabotaging(WorkflowManipulator):
            name = "sabotage"

            def encoding_spec(self, index_map):
                return SubEncodingSpec("noop", EncodingKind.BINARY, 1)

            def manipulate(self, workflow, index_map, sub_value):
                return workflow

        class BlindCalculator(MakespanErgonomicsCalculator):
            def check_precondition(self, workflow):
                return True  # skip the guard so calculate hits the gap

        registry = PluginRegistry(
            manipulators=(Sabotaging(),),
            complex_calculators=(BlindCalculator(),),
        )
        problem = assemble(w3, registry)
        with pytest.raises(EvaluationError) as err:
            evaluate(problem, ((0,),))
        message = str(err.value)
        assert "BlindCalculator" in message and "a1" in message
