"""Shared builders: the W3 reference instance, random workflows and random
W3-style allocation instances."""

from __future__ import annotations

from random import Random

from adaptopt.cobot import InstanceRow, InstanceTable, build_cobot_problem
from adaptopt.problem import (
    AssembledProblem,
    ComplexFitnessCalculator,
    ObjectiveSpec,
    ObjectiveVector,
)
from adaptopt.workflow import (
    ActionNode,
    AssetNode,
    Branch,
    DecisionNode,
    Property,
    Relationship,
    RelationshipKind,
    ValueType,
    Workflow,
    validate_workflow,
)

# Reference instance: three chained actions with a time/ergonomics trade-off.
W3_ROWS = (
    InstanceRow("a1", 10.0, 25.0, 3),
    InstanceRow("a2", 20.0, 40.0, 1),
    InstanceRow("a3", 15.0, 30.0, 2),
)

# Exact front of W3, enumerated by hand over all 8 assignments.
W3_FRONT = {(45.0, 6.0), (60.0, 3.0), (75.0, 1.0), (95.0, 0.0)}
W3_FRONT_GENOTYPES = {((0, 0, 0),), ((1, 0, 0),), ((1, 0, 1),), ((1, 1, 1),)}


def w3_workflow() -> Workflow:
    return validate_workflow(
        Workflow(
            name="desk-assembly",
            actions=(
                ActionNode("a1", "grab frame"),
                ActionNode("a2", "move frame to station"),
                ActionNode("a3", "screw frame"),
            ),
            relationships=(
                Relationship(RelationshipKind.SUCCESSOR, "a1", "a2"),
                Relationship(RelationshipKind.SUCCESSOR, "a2", "a3"),
            ),
        )
    )


def w3_table() -> InstanceTable:
    return InstanceTable(W3_ROWS)


def w3_problem() -> AssembledProblem:
    return build_cobot_problem(w3_workflow(), w3_table())


def vec(*values: float) -> ObjectiveVector:
    return ObjectiveVector(tuple(float(v) for v in values))


def chain_workflow(n: int, name: str = "chain") -> Workflow:
    actions = tuple(ActionNode(f"a{i}", f"task {i}") for i in range(n))
    relationships = tuple(
        Relationship(RelationshipKind.SUCCESSOR, f"a{i}", f"a{i + 1}")
        for i in range(n - 1)
    )
    return validate_workflow(Workflow(name, actions, relationships=relationships))


def random_allocation_instance(
    rng: Random, n: int
) -> tuple[Workflow, InstanceTable]:
    """Chain workflow with human times U[5,30], cobot = human * U[1.5,3],
    penalties uniform in {1,2,3}."""
    workflow = chain_workflow(n, name=f"random-{n}")
    rows = []
    for i in range(n):
        human = rng.uniform(5.0, 30.0)
        rows.append(
            InstanceRow(
                f"a{i}",
                round(human, 3),
                round(human * rng.uniform(1.5, 3.0), 3),
                rng.choice((1, 2, 3)),
            )
        )
    return workflow, InstanceTable(tuple(rows))


class SubsetMakespanCalculator(ComplexFitnessCalculator):
    """Time/penalty pair restricted to a subset of actions (for many-objective
    synthetics built from independent halves)."""

    def __init__(self, label: str, ids):
        self.label = label
        self.ids = frozenset(ids)

    def objective_specs(self):
        return (
            ObjectiveSpec(f"makespan_{self.label}"),
            ObjectiveSpec(f"penalty_{self.label}"),
        )

    def calculate(self, workflow, index_map):
        makespan = penalty = 0.0
        for action in workflow.actions:
            if action.id not in self.ids:
                continue
            props = action.properties
            if props["IsCobotUtilized"].value:
                makespan += props["CobotExecutionTime"].value
            else:
                makespan += props["ExecutionTimeHuman"].value
                penalty += props["ErgonomicPenaltyHuman"].value
        return (makespan, penalty)


def four_objective_problem(table_seed: int = 4, half: int = 6) -> AssembledProblem:
    """Two independent allocation halves evaluated as four objectives."""
    from adaptopt.cobot import cobot_flag_manipulator, metric_appenders
    from adaptopt.problem import PluginRegistry, assemble

    n = 2 * half
    workflow = chain_workflow(n, name="dual-station")
    _, table = random_allocation_instance(Random(table_seed), n)
    registry = PluginRegistry(
        appenders=tuple(metric_appenders(table)),
        manipulators=(cobot_flag_manipulator(),),
        complex_calculators=(
            SubsetMakespanCalculator("one", [f"a{i}" for i in range(half)]),
            SubsetMakespanCalculator("two", [f"a{i}" for i in range(half, n)]),
        ),
    )
    return assemble(workflow, registry)


def reference_point_coverage(result, points) -> float:
    """Fraction of reference points with at least one associated member of the
    final population (normalized over that population)."""
    from adaptopt.moea import associate, compute_intercepts

    vectors = [ind.objectives.values for ind in result.final_population]
    arity = len(points[0])
    ideal = [min(v[m] for v in vectors) for m in range(arity)]
    translated = [[v - z for v, z in zip(vec, ideal)] for vec in vectors]
    intercepts = compute_intercepts(translated, arity)
    normalized = [[t / a for t, a in zip(vec, intercepts)] for vec in translated]
    assoc, _ = associate(normalized, points)
    return len(set(assoc)) / len(points)


_NASTY_STRINGS = (
    "plain",
    "with space",
    'quo"te',
    "amp & lt < gt >",
    "apostrophe '",
    "tab\tand\nnewline",
    "unicode …µ€",
    "",
)


def _random_properties(rng: Random) -> dict[str, Property]:
    properties = {}
    for i in range(rng.randrange(0, 4)):
        key = f"k{i}_{rng.randrange(100)}"
        kind = rng.randrange(4)
        if kind == 0:
            prop = Property.string(key, rng.choice(_NASTY_STRINGS))
        elif kind == 1:
            prop = Property.integer(key, rng.randrange(-1000, 1000))
        elif kind == 2:
            prop = Property.real(key, round(rng.uniform(-1e6, 1e6), 6))
        else:
            prop = Property.boolean(key, rng.random() < 0.5)
        properties[key] = prop
    return properties


def random_workflow(rng: Random) -> Workflow:
    """A random valid workflow: nested actions, assets, decisions and
    relationships that respect all kind constraints and acyclicity."""
    actions_flat: list[ActionNode | None] = []
    counter = 0

    def make_action(depth: int) -> str:
        nonlocal counter
        action_id = f"a{counter}"
        counter += 1
        slot = len(actions_flat)
        actions_flat.append(None)
        children = []
        if depth < 2 and rng.random() < 0.35:
            for _ in range(rng.randrange(1, 3)):
                children.append(make_action(depth + 1))
        actions_flat[slot] = ActionNode(
            action_id,
            rng.choice(_NASTY_STRINGS) or f"task {action_id}",
            _random_properties(rng),
            tuple(children),
        )
        return action_id

    for _ in range(rng.randrange(0, 4)):
        make_action(0)
    actions = tuple(actions_flat)

    assets = tuple(
        AssetNode(f"s{i}", f"asset {i}", _random_properties(rng))
        for i in range(rng.randrange(0, 3))
    )

    element_ids = [a.id for a in actions] + [s.id for s in assets]
    decisions = []
    if element_ids:
        for i in range(rng.randrange(0, 3)):
            branches = tuple(
                Branch(f"cond_{j} > {rng.randrange(10)}", rng.choice(element_ids))
                for j in range(rng.randrange(1, 3))
            )
            decisions.append(
                DecisionNode(f"d{i}", f"decision {i}", _random_properties(rng), branches)
            )
    decisions = tuple(decisions)

    # Successor edges only from earlier to later elements: acyclic by layout.
    ordered = [a.id for a in actions] + [d.id for d in decisions]
    is_action = {a.id for a in actions}
    relationships = []
    seen = set()
    for _ in range(rng.randrange(0, 6)):
        if len(ordered) < 2:
            break
        i = rng.randrange(len(ordered) - 1)
        j = rng.randrange(i + 1, len(ordered))
        from_id, to_id = ordered[i], ordered[j]
        if from_id not in is_action and to_id not in is_action:
            continue  # decision -> decision is not allowed
        triple = (RelationshipKind.SUCCESSOR, from_id, to_id)
        if triple not in seen:
            seen.add(triple)
            relationships.append(Relationship(*triple))
    for _ in range(rng.randrange(0, 4)):
        if not actions or not assets:
            break
        action = rng.choice(actions).id
        asset = rng.choice(assets).id
        kind = rng.choice((RelationshipKind.INCLUDES, RelationshipKind.PRODUCES))
        pair = (action, asset) if rng.random() < 0.5 else (asset, action)
        triple = (kind, *pair)
        if triple not in seen:
            seen.add(triple)
            relationships.append(Relationship(*triple))
    for decision in decisions:
        for branch in decision.branches:
            triple = (RelationshipKind.BRANCH, decision.id, branch.target)
            if triple not in seen:
                seen.add(triple)
                relationships.append(Relationship(*triple))

    return validate_workflow(
        Workflow(
            name=rng.choice(_NASTY_STRINGS) or "wf",
            actions=actions,
            assets=assets,
            decisions=decisions,
            relationships=tuple(relationships),
        )
    )
