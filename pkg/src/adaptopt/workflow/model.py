"""Attributed workflow graph model.

A workflow is a named collection of actions, assets and decisions connected by
typed relationships. Actions may be composite (they reference child actions by
id); the composition forest together with the order of the ``actions`` tuple
defines the document order used for enumeration. Values are immutable after
construction: every mutating operation returns a new workflow that shares the
untouched parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

from ..errors import (
    PropertyTypeError,
    UnknownElementError,
    WorkflowValidationError,
)


class ValueType(Enum):
    STRING = "string"
    INT = "int"
    REAL = "real"
    BOOL = "bool"


_PYTHON_TYPES = {
    ValueType.STRING: str,
    ValueType.INT: int,
    ValueType.REAL: float,
    ValueType.BOOL: bool,
}

PropertyValue = str | int | float | bool


@dataclass(frozen=True, slots=True)
class Property:
    """A typed key-value annotation attached to a workflow element."""

    key: str
    value: PropertyValue
    value_type: ValueType

    def __post_init__(self):
        if not isinstance(self.key, str) or not self.key:
            raise PropertyTypeError("property key must be a non-empty string")
        expected = _PYTHON_TYPES[self.value_type]
        # bool is a subclass of int; keep the four types mutually exclusive.
        if isinstance(self.value, bool) != (self.value_type is ValueType.BOOL):
            raise PropertyTypeError(
                f"property '{self.key}': value {self.value!r} does not match "
                f"declared type '{self.value_type.value}'"
            )
        if not isinstance(self.value, expected):
            raise PropertyTypeError(
                f"property '{self.key}': value {self.value!r} does not match "
                f"declared type '{self.value_type.value}'"
            )
        if self.value_type is ValueType.REAL and not math.isfinite(self.value):
            raise PropertyTypeError(f"property '{self.key}': real value must be finite")

    @classmethod
    def string(cls, key: str, value: str) -> "Property":
        return cls(key, value, ValueType.STRING)

    @classmethod
    def integer(cls, key: str, value: int) -> "Property":
        return cls(key, value, ValueType.INT)

    @classmethod
    def real(cls, key: str, value: float) -> "Property":
        return cls(key, float(value), ValueType.REAL)

    @classmethod
    def boolean(cls, key: str, value: bool) -> "Property":
        return cls(key, value, ValueType.BOOL)


def make_properties(props: Iterable[Property]) -> dict[str, Property]:
    """Build a property mapping, rejecting duplicate keys."""
    out: dict[str, Property] = {}
    for p in props:
        if p.key in out:
            raise WorkflowValidationError([f"duplicate property key '{p.key}'"])
        out[p.key] = p
    return out


@dataclass(frozen=True)
class ActionNode:
    id: str
    name: str
    properties: Mapping[str, Property] = field(default_factory=dict)
    children: tuple[str, ...] = ()


@dataclass(frozen=True)
class AssetNode:
    id: str
    name: str
    properties: Mapping[str, Property] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class Branch:
    condition: str
    target: str


@dataclass(frozen=True)
class DecisionNode:
    id: str
    name: str
    properties: Mapping[str, Property] = field(default_factory=dict)
    branches: tuple[Branch, ...] = ()


class RelationshipKind(Enum):
    SUCCESSOR = "successor"
    INCLUDES = "includes"
    PRODUCES = "produces"
    BRANCH = "branch"


@dataclass(frozen=True, slots=True)
class Relationship:
    kind: RelationshipKind
    from_id: str
    to_id: str


WorkflowElement = ActionNode | AssetNode | DecisionNode


@dataclass(frozen=True)
class Workflow:
    """An immutable workflow; ``actions`` is flat, in document order (pre-order)."""

    name: str
    actions: tuple[ActionNode, ...] = ()
    assets: tuple[AssetNode, ...] = ()
    decisions: tuple[DecisionNode, ...] = ()
    relationships: tuple[Relationship, ...] = ()

    @cached_property
    def elements_by_id(self) -> dict[str, WorkflowElement]:
        out: dict[str, WorkflowElement] = {}
        for node in (*self.actions, *self.assets, *self.decisions):
            out[node.id] = node
        return out

    @cached_property
    def child_action_ids(self) -> frozenset[str]:
        return frozenset(cid for a in self.actions for cid in a.children)

    @cached_property
    def top_level_actions(self) -> tuple[ActionNode, ...]:
        return tuple(a for a in self.actions if a.id not in self.child_action_ids)

    def element(self, element_id: str) -> WorkflowElement:
        try:
            return self.elements_by_id[element_id]
        except KeyError:
            raise UnknownElementError(f"no element with id '{element_id}'") from None


@dataclass(frozen=True)
class ActionIndexMap:
    """Stable bijection between 0-based indices and action ids (document order)."""

    pairs: tuple[tuple[int, str], ...]

    @classmethod
    def from_ids(cls, ids: Iterable[str]) -> "ActionIndexMap":
        return cls(tuple(enumerate(ids)))

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(action_id for _, action_id in self.pairs)

    @cached_property
    def _index_of(self) -> dict[str, int]:
        return {action_id: index for index, action_id in self.pairs}

    def id_at(self, index: int) -> str:
        return self.ids[index]

    def index_of(self, action_id: str) -> int:
        try:
            return self._index_of[action_id]
        except KeyError:
            raise UnknownElementError(f"no action with id '{action_id}'") from None

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def workflow_violations(w: Workflow) -> list[str]:
    """Collect every model-invariant violation of ``w`` (empty list = valid)."""
    violations: list[str] = []

    by_id: dict[str, WorkflowElement] = {}
    for node in (*w.actions, *w.assets, *w.decisions):
        if node.id in by_id:
            violations.append(f"duplicate element id '{node.id}'")
        else:
            by_id[node.id] = node

    for node in (*w.actions, *w.assets, *w.decisions):
        for key, prop in node.properties.items():
            if key != prop.key:
                violations.append(
                    f"element '{node.id}': property stored under key '{key}' "
                    f"declares key '{prop.key}'"
                )

    action_ids = {a.id for a in w.actions}
    parents: dict[str, str] = {}
    for action in w.actions:
        seen_children: set[str] = set()
        for child_id in action.children:
            if child_id not in action_ids:
                violations.append(
                    f"action '{action.id}' references unknown child action '{child_id}'"
                )
                continue
            if child_id in seen_children:
                violations.append(
                    f"action '{action.id}' lists child '{child_id}' more than once"
                )
                continue
            seen_children.add(child_id)
            if child_id in parents:
                violations.append(
                    f"action '{child_id}' is a child of both "
                    f"'{parents[child_id]}' and '{action.id}'"
                )
            else:
                parents[child_id] = action.id

    # Document order must equal pre-order over the composition forest.
    if not violations:
        order: list[str] = []

        def visit(action: ActionNode, stack: set[str]):
            if action.id in stack:
                violations.append(f"composition cycle through action '{action.id}'")
                return
            order.append(action.id)
            stack.add(action.id)
            for child_id in action.children:
                child = by_id[child_id]
                assert isinstance(child, ActionNode)
                visit(child, stack)
            stack.remove(action.id)

        for top in w.actions:
            if top.id not in parents:
                visit(top, set())
        if not violations and order != [a.id for a in w.actions]:
            violations.append(
                "actions are not stored in document order "
                "(pre-order over the composition hierarchy)"
            )

    for decision in w.decisions:
        if not decision.branches:
            violations.append(f"decision '{decision.id}' has no branches")
        for branch in decision.branches:
            if branch.target not in by_id:
                violations.append(
                    f"decision '{decision.id}' branch targets unknown element "
                    f"'{branch.target}'"
                )

    seen_rel: set[tuple[RelationshipKind, str, str]] = set()
    for rel in w.relationships:
        triple = (rel.kind, rel.from_id, rel.to_id)
        if triple in seen_rel:
            violations.append(
                f"duplicate relationship ({rel.kind.value}, {rel.from_id}, {rel.to_id})"
            )
        seen_rel.add(triple)
        endpoints_ok = True
        for endpoint in (rel.from_id, rel.to_id):
            if endpoint not in by_id:
                violations.append(
                    f"relationship ({rel.kind.value}) references unknown element "
                    f"'{endpoint}'"
                )
                endpoints_ok = False
        if not endpoints_ok:
            continue
        src, dst = by_id[rel.from_id], by_id[rel.to_id]
        if rel.kind is RelationshipKind.SUCCESSOR:
            ok = (isinstance(src, ActionNode) and isinstance(dst, (ActionNode, DecisionNode))) or (
                isinstance(src, DecisionNode) and isinstance(dst, ActionNode)
            )
            if not ok:
                violations.append(
                    f"successor relationship {rel.from_id} -> {rel.to_id} must connect "
                    "actions and decisions"
                )
        elif rel.kind in (RelationshipKind.INCLUDES, RelationshipKind.PRODUCES):
            pair = {type(src), type(dst)}
            if pair != {ActionNode, AssetNode}:
                violations.append(
                    f"{rel.kind.value} relationship {rel.from_id} -> {rel.to_id} must "
                    "connect an action and an asset"
                )

    cycle = _successor_cycle(w)
    if cycle:
        violations.append("successor cycle: " + " -> ".join(cycle))

    return violations


def _successor_cycle(w: Workflow) -> list[str] | None:
    """Find a cycle in the successor subgraph, if any (iterative DFS)."""
    adjacency: dict[str, list[str]] = {}
    for rel in w.relationships:
        if rel.kind is RelationshipKind.SUCCESSOR:
            adjacency.setdefault(rel.from_id, []).append(rel.to_id)

    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[str, int] = {}
    parent: dict[str, str] = {}
    for start in adjacency:
        if color.get(start, WHITE) != WHITE:
            continue
        stack = [(start, iter(adjacency.get(start, ())))]
        color[start] = GREY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                state = color.get(nxt, WHITE)
                if state == GREY:
                    cycle = [nxt, node]
                    cur = node
                    while cur != nxt:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    return cycle
                if state == WHITE:
                    color[nxt] = GREY
                    parent[nxt] = node
                    stack.append((nxt, iter(adjacency.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return None


def validate_workflow(w: Workflow) -> Workflow:
    """Raise :class:`WorkflowValidationError` unless ``w`` passes all invariants."""
    violations = workflow_violations(w)
    if violations:
        raise WorkflowValidationError(violations)
    return w


def enumerate_actions(w: Workflow) -> ActionIndexMap:
    """Assign 0-based indices to all actions in document order."""
    return ActionIndexMap.from_ids(a.id for a in w.actions)


def get_property(w: Workflow, element_id: str, key: str) -> Property | None:
    """Return the element's property for ``key``, or ``None`` when absent."""
    return w.element(element_id).properties.get(key)


def with_properties(w: Workflow, updates: Mapping[str, Iterable[Property]]) -> Workflow:
    """Upsert properties on several elements at once; single pass, no revalidation.

    Upserts cannot break graph invariants, so the result is valid whenever the
    input was. Unknown element ids raise :class:`UnknownElementError`.
    """
    unknown = [eid for eid in updates if eid not in w.elements_by_id]
    if unknown:
        raise UnknownElementError(f"no element(s) with id(s): {', '.join(sorted(unknown))}")

    def upsert(node, props: Iterable[Property]):
        merged = dict(node.properties)
        for p in props:
            merged[p.key] = p
        if type(node) is ActionNode:
            return ActionNode(node.id, node.name, merged, node.children)
        if type(node) is AssetNode:
            return AssetNode(node.id, node.name, merged)
        return DecisionNode(node.id, node.name, merged, node.branches)

    actions = tuple(upsert(a, updates[a.id]) if a.id in updates else a for a in w.actions)
    assets = tuple(upsert(a, updates[a.id]) if a.id in updates else a for a in w.assets)
    decisions = tuple(upsert(d, updates[d.id]) if d.id in updates else d for d in w.decisions)
    return replace(w, actions=actions, assets=assets, decisions=decisions)


def set_property(w: Workflow, element_id: str, prop: Property) -> Workflow:
    """Upsert one property by key; everything else is untouched."""
    return with_properties(w, {element_id: (prop,)})
