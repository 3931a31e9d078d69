from .model import (
    ActionIndexMap,
    ActionNode,
    AssetNode,
    Branch,
    DecisionNode,
    Property,
    PropertyValue,
    Relationship,
    RelationshipKind,
    ValueType,
    Workflow,
    enumerate_actions,
    get_property,
    make_properties,
    set_property,
    validate_workflow,
    with_properties,
    workflow_violations,
)
from .xml_io import parse_workflow, serialize_workflow

__all__ = [
    "ActionIndexMap",
    "ActionNode",
    "AssetNode",
    "Branch",
    "DecisionNode",
    "Property",
    "PropertyValue",
    "Relationship",
    "RelationshipKind",
    "ValueType",
    "Workflow",
    "enumerate_actions",
    "get_property",
    "make_properties",
    "parse_workflow",
    "serialize_workflow",
    "set_property",
    "validate_workflow",
    "with_properties",
    "workflow_violations",
]
