# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.graph.test -*-

"""
Causal DAGs.

Every model in ``cgnf`` is built over a user-supplied causal DAG: the flow
masks each variable's conditioner to its DAG parents, and interventions are
expressed by mutilating the DAG.
"""

__all__ = [
    "CausalDag", "NodeRole",
    "DagError", "CycleDetected", "DuplicateNode", "UnknownNodeInEdge",
    "EmptySpec", "UnknownNode", "MalformedSpec", "MissingRole",
    "parse_dag", "serialize_dag", "load_dag",
    "parents", "children", "descendants", "has_directed_path",
    "mutilate", "with_roles", "role_node",
]

from ._dag import (
    CausalDag, NodeRole,
    DagError, CycleDetected, DuplicateNode, UnknownNodeInEdge,
    EmptySpec, UnknownNode, MalformedSpec, MissingRole,
    parse_dag, serialize_dag, load_dag,
    parents, children, descendants, has_directed_path,
    mutilate, with_roles, role_node,
)
