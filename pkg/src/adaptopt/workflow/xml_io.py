"""Canonical XML persistence for workflows.

The serializer emits a fixed canonical shape (UTF-8, 2-space indent, fixed
attribute order, double-quoted attributes) so that serialization is
byte-deterministic; the parser accepts any whitespace variation of the same
document structure and rejects unknown elements and attributes.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET
from typing import Iterable

from ..errors import WorkflowParseError, WorkflowSchemaError
from .model import (
    ActionNode,
    AssetNode,
    Branch,
    DecisionNode,
    Property,
    Relationship,
    RelationshipKind,
    ValueType,
    Workflow,
    make_properties,
    validate_workflow,
)

_INT_RE = re.compile(r"[+-]?\d+")

_ESCAPES = {
    "&": "&amp;",
    "<": "&lt;",
    ">": "&gt;",
    '"': "&quot;",
    "\n": "&#10;",
    "\r": "&#13;",
    "\t": "&#9;",
}


def _attr(value: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in value)


def _format_value(prop: Property) -> str:
    if prop.value_type is ValueType.BOOL:
        return "true" if prop.value else "false"
    if prop.value_type is ValueType.REAL:
        return repr(prop.value)
    return str(prop.value)


def _parse_value(raw: str, value_type: ValueType, context: str):
    if value_type is ValueType.STRING:
        return raw
    if value_type is ValueType.INT:
        if not _INT_RE.fullmatch(raw):
            raise WorkflowSchemaError(f"{context}: '{raw}' is not an integer")
        return int(raw)
    if value_type is ValueType.REAL:
        try:
            value = float(raw)
        except ValueError:
            raise WorkflowSchemaError(f"{context}: '{raw}' is not a real number") from None
        if not math.isfinite(value):
            raise WorkflowSchemaError(f"{context}: real value must be finite")
        return value
    if raw == "true":
        return True
    if raw == "false":
        return False
    raise WorkflowSchemaError(f"{context}: '{raw}' is not 'true' or 'false'")


def serialize_workflow(w: Workflow) -> str:
    """Serialize to the canonical document form (deterministic bytes)."""
    lines: list[str] = [f'<workflow name="{_attr(w.name)}">']

    def emit_properties(props: Iterable[Property], indent: str):
        for prop in props:
            lines.append(
                f'{indent}<property key="{_attr(prop.key)}" '
                f'type="{prop.value_type.value}" value="{_attr(_format_value(prop))}"/>'
            )

    def emit_action(action: ActionNode, indent: str, by_id):
        head = f'{indent}<action id="{_attr(action.id)}" name="{_attr(action.name)}"'
        if not action.properties and not action.children:
            lines.append(head + "/>")
            return
        lines.append(head + ">")
        emit_properties(action.properties.values(), indent + "  ")
        for child_id in action.children:
            emit_action(by_id[child_id], indent + "  ", by_id)
        lines.append(f"{indent}</action>")

    by_id = {a.id: a for a in w.actions}
    if w.top_level_actions:
        lines.append("  <actions>")
        for action in w.top_level_actions:
            emit_action(action, "    ", by_id)
        lines.append("  </actions>")
    else:
        lines.append("  <actions/>")

    if w.assets:
        lines.append("  <assets>")
        for asset in w.assets:
            head = f'    <asset id="{_attr(asset.id)}" name="{_attr(asset.name)}"'
            if asset.properties:
                lines.append(head + ">")
                emit_properties(asset.properties.values(), "      ")
                lines.append("    </asset>")
            else:
                lines.append(head + "/>")
        lines.append("  </assets>")
    else:
        lines.append("  <assets/>")

    if w.decisions:
        lines.append("  <decisions>")
        for decision in w.decisions:
            lines.append(
                f'    <decision id="{_attr(decision.id)}" name="{_attr(decision.name)}">'
            )
            emit_properties(decision.properties.values(), "      ")
            for branch in decision.branches:
                lines.append(
                    f'      <branch condition="{_attr(branch.condition)}" '
                    f'target="{_attr(branch.target)}"/>'
                )
            lines.append("    </decision>")
        lines.append("  </decisions>")
    else:
        lines.append("  <decisions/>")

    if w.relationships:
        lines.append("  <relationships>")
        for rel in w.relationships:
            lines.append(
                f'    <relationship kind="{rel.kind.value}" '
                f'from="{_attr(rel.from_id)}" to="{_attr(rel.to_id)}"/>'
            )
        lines.append("  </relationships>")
    else:
        lines.append("  <relationships/>")

    lines.append("</workflow>")
    return "\n".join(lines) + "\n"


def _require_attrs(elem: ET.Element, required: tuple[str, ...], context: str) -> list[str]:
    unknown = [a for a in elem.attrib if a not in required]
    if unknown:
        raise WorkflowSchemaError(f"{context}: unknown attribute(s) {', '.join(sorted(unknown))}")
    missing = [a for a in required if a not in elem.attrib]
    if missing:
        raise WorkflowSchemaError(f"{context}: missing attribute(s) {', '.join(missing)}")
    return [elem.attrib[a] for a in required]


def _reject_text(elem: ET.Element, context: str):
    if elem.text and elem.text.strip():
        raise WorkflowSchemaError(f"{context}: unexpected text content {elem.text.strip()!r}")
    for child in elem:
        if child.tail and child.tail.strip():
            raise WorkflowSchemaError(f"{context}: unexpected text content {child.tail.strip()!r}")


def _parse_property(elem: ET.Element) -> Property:
    key, type_raw, value_raw = _require_attrs(elem, ("key", "type", "value"), "<property>")
    _reject_text(elem, f"property '{key}'")
    if len(elem):
        raise WorkflowSchemaError(f"property '{key}': <property> cannot have children")
    try:
        value_type = ValueType(type_raw)
    except ValueError:
        raise WorkflowSchemaError(
            f"property '{key}': unknown type '{type_raw}' "
            "(expected string|int|real|bool)"
        ) from None
    value = _parse_value(value_raw, value_type, f"property '{key}'")
    return Property(key, value, value_type)


def _parse_action(elem: ET.Element, flat: list[ActionNode]) -> str:
    action_id, name = _require_attrs(elem, ("id", "name"), "<action>")
    _reject_text(elem, f"action '{action_id}'")
    slot = len(flat)
    flat.append(None)  # reserve the document-order slot before descending
    properties: list[Property] = []
    children: list[str] = []
    for child in elem:
        if child.tag == "property":
            properties.append(_parse_property(child))
        elif child.tag == "action":
            children.append(_parse_action(child, flat))
        else:
            raise WorkflowSchemaError(f"action '{action_id}': unknown element <{child.tag}>")
    flat[slot] = ActionNode(action_id, name, make_properties(properties), tuple(children))
    return action_id


def parse_workflow(xml_text: str) -> Workflow:
    """Parse and validate a workflow document."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise WorkflowParseError(f"malformed XML: {exc}", line=line, column=column) from exc

    if root.tag != "workflow":
        raise WorkflowSchemaError(f"root element must be <workflow>, got <{root.tag}>")
    (name,) = _require_attrs(root, ("name",), "<workflow>")
    _reject_text(root, "<workflow>")

    actions: list[ActionNode] = []
    assets: list[AssetNode] = []
    decisions: list[DecisionNode] = []
    relationships: list[Relationship] = []
    seen_sections: set[str] = set()

    for section in root:
        if section.tag in seen_sections:
            raise WorkflowSchemaError(f"duplicate section <{section.tag}>")
        seen_sections.add(section.tag)
        _require_attrs(section, (), f"<{section.tag}>")
        _reject_text(section, f"<{section.tag}>")

        if section.tag == "actions":
            for child in section:
                if child.tag != "action":
                    raise WorkflowSchemaError(f"<actions>: unknown element <{child.tag}>")
                _parse_action(child, actions)
        elif section.tag == "assets":
            for child in section:
                if child.tag != "asset":
                    raise WorkflowSchemaError(f"<assets>: unknown element <{child.tag}>")
                asset_id, asset_name = _require_attrs(child, ("id", "name"), "<asset>")
                _reject_text(child, f"asset '{asset_id}'")
                props = []
                for sub in child:
                    if sub.tag != "property":
                        raise WorkflowSchemaError(
                            f"asset '{asset_id}': unknown element <{sub.tag}>"
                        )
                    props.append(_parse_property(sub))
                assets.append(AssetNode(asset_id, asset_name, make_properties(props)))
        elif section.tag == "decisions":
            for child in section:
                if child.tag != "decision":
                    raise WorkflowSchemaError(f"<decisions>: unknown element <{child.tag}>")
                decision_id, decision_name = _require_attrs(child, ("id", "name"), "<decision>")
                _reject_text(child, f"decision '{decision_id}'")
                props = []
                branches = []
                for sub in child:
                    if sub.tag == "property":
                        props.append(_parse_property(sub))
                    elif sub.tag == "branch":
                        condition, target = _require_attrs(
                            sub, ("condition", "target"), "<branch>"
                        )
                        branches.append(Branch(condition, target))
                    else:
                        raise WorkflowSchemaError(
                            f"decision '{decision_id}': unknown element <{sub.tag}>"
                        )
                decisions.append(
                    DecisionNode(
                        decision_id, decision_name, make_properties(props), tuple(branches)
                    )
                )
        elif section.tag == "relationships":
            for child in section:
                if child.tag != "relationship":
                    raise WorkflowSchemaError(
                        f"<relationships>: unknown element <{child.tag}>"
                    )
                kind_raw, from_id, to_id = _require_attrs(
                    child, ("kind", "from", "to"), "<relationship>"
                )
                if len(child):
                    raise WorkflowSchemaError("<relationship> cannot have children")
                try:
                    kind = RelationshipKind(kind_raw)
                except ValueError:
                    raise WorkflowSchemaError(
                        f"unknown relationship kind '{kind_raw}' "
                        "(expected successor|includes|produces|branch)"
                    ) from None
                relationships.append(Relationship(kind, from_id, to_id))
        else:
            raise WorkflowSchemaError(f"<workflow>: unknown element <{section.tag}>")

    w = Workflow(
        name=name,
        actions=tuple(actions),
        assets=tuple(assets),
        decisions=tuple(decisions),
        relationships=tuple(relationships),
    )
    return validate_workflow(w)
