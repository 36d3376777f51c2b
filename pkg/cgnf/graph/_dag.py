# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.graph.test.test_dag -*-

"""
Causal DAGs: parsing, validation, canonical serialization and the graph
mutilation performed by an intervention.

The text grammar is a ``;``-separated list of node declarations and
``Parent->Child`` edges.  Whitespace is ignored and ``#`` starts a comment
that runs to the end of the line::

    O; C; A; Y; C->A; C->Y; A->Y; O->Y
"""

import re

import numpy as np
import networkx as nx

from characteristic import attributes


__all__ = [
    "CausalDag", "NodeRole",
    "DagError", "CycleDetected", "DuplicateNode", "UnknownNodeInEdge",
    "EmptySpec", "UnknownNode", "MalformedSpec", "MissingRole",
    "parse_dag", "serialize_dag", "load_dag",
    "parents", "children", "descendants", "has_directed_path",
    "mutilate", "with_roles", "role_node",
]


_NAME = re.compile(r"^[A-Za-z0-9_.]+$")
_COMMENT = re.compile(r"#[^\n]*")


class DagError(ValueError):
    """
    A causal DAG could not be built or queried.
    """


class CycleDetected(DagError):
    """
    The declared edges contain a directed cycle.
    """


class DuplicateNode(DagError):
    """
    A node name was declared more than once.
    """


class UnknownNodeInEdge(DagError):
    """
    An edge refers to a node which was never declared.
    """


class EmptySpec(DagError):
    """
    The DAG text declares no nodes at all.
    """


class MalformedSpec(DagError):
    """
    A declaration is neither a valid node name nor a ``P->C`` edge.
    """


class UnknownNode(DagError):
    """
    A query named a node which is not part of the DAG.
    """


class MissingRole(DagError):
    """
    No node (or more than one node) carries a role which must be unique.
    """


class NodeRole(object):
    """
    Role tags of causal variables.

    A query that computes potential outcomes needs exactly one ``TREATMENT``
    node and one ``OUTCOME`` node.
    """
    TREATMENT = u"treatment"
    OUTCOME = u"outcome"
    CONFOUNDER = u"confounder"
    OTHER_CAUSE = u"other"
    PLAIN = u"plain"

    ALL = frozenset([TREATMENT, OUTCOME, CONFOUNDER, OTHER_CAUSE, PLAIN])


@attributes(["nodes", "edges", "roles"], defaults=dict(roles=frozenset()))
class CausalDag(object):
    """
    A validated causal DAG.

    :ivar tuple nodes: The variable names, in declaration order.  This order
        fixes the variable index used everywhere else (columns of a dataset,
        coordinates of a flow).

    :ivar frozenset edges: ``(parent, child)`` pairs.

    :ivar frozenset roles: ``(node, role)`` pairs; nodes without an entry have
        the ``NodeRole.PLAIN`` role.

    :ivar numpy.ndarray adjacency: Boolean ``(d, d)`` matrix where
        ``adjacency[i, j]`` is true exactly when node ``j`` is a parent of
        node ``i``.

    :ivar tuple topo_order: Node indices, every parent before its children.
        Ties are broken by declaration order.
    """
    def __init__(self):
        """
        :raises DagError: If the nodes and edges do not form a DAG.
        """
        self.nodes = tuple(self.nodes)
        self.edges = frozenset(self.edges)
        self.roles = frozenset(self.roles)
        if not self.nodes:
            raise EmptySpec("A causal DAG needs at least one node.")
        seen = set()
        for name in self.nodes:
            if not name or not _NAME.match(name):
                raise MalformedSpec("Invalid node name: %r" % (name,))
            if name in seen:
                raise DuplicateNode("Node declared twice: %s" % (name,))
            seen.add(name)
        for parent, child in sorted(self.edges):
            for name in (parent, child):
                if name not in seen:
                    raise UnknownNodeInEdge(
                        "Edge %s->%s refers to undeclared node %s" % (
                            parent, child, name))
        for name, role in self.roles:
            if name not in seen:
                raise UnknownNode("Role given to unknown node: %s" % (name,))
            if role not in NodeRole.ALL:
                raise MalformedSpec("Unknown role %r for node %s" % (
                    role, name))

        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise CycleDetected("Edges contain a cycle: %s" % (
                u" -> ".join([edge[0] for edge in cycle] + [cycle[0][0]]),))
        self._graph = graph

        index = dict((name, i) for i, name in enumerate(self.nodes))
        self._index = index
        adjacency = np.zeros((len(self.nodes), len(self.nodes)), dtype=bool)
        for parent, child in self.edges:
            adjacency[index[child], index[parent]] = True
        adjacency.setflags(write=False)
        self.adjacency = adjacency
        self.topo_order = tuple(
            index[name] for name in
            nx.lexicographical_topological_sort(graph, key=index.__getitem__))

    @property
    def dimension(self):
        """
        The number of variables.
        """
        return len(self.nodes)

    def index(self, node):
        """
        :param unicode node: A node name.

        :raises UnknownNode: If ``node`` is not in this DAG.

        :return: The node's variable index.
        """
        try:
            return self._index[node]
        except KeyError:
            raise UnknownNode("No such node: %s" % (node,))

    def role_of(self, node):
        """
        :return: The role tag of ``node``.
        """
        self.index(node)
        return dict(self.roles).get(node, NodeRole.PLAIN)


def parse_dag(text):
    """
    Parse DAG text into a ``CausalDag``.

    :param unicode text: Declarations in the edge-list grammar.

    :raises DagError: If the text is empty, malformed or describes something
        which is not a DAG.

    :return: A ``CausalDag`` whose node order is the declaration order.
    """
    text = _COMMENT.sub(u"", text)
    nodes = []
    edges = set()
    for token in text.split(u";"):
        token = u"".join(token.split())
        if not token:
            continue
        if u"->" in token:
            parts = token.split(u"->")
            if len(parts) != 2 or not all(parts):
                raise MalformedSpec("Malformed edge: %r" % (token,))
            edges.add((parts[0], parts[1]))
        else:
            nodes.append(token)
    if not nodes:
        raise EmptySpec("DAG text declares no nodes.")
    return CausalDag(nodes=nodes, edges=edges)


def serialize_dag(dag):
    """
    Render ``dag`` in canonical text form: node declarations in node order,
    followed by the edges sorted lexicographically.

    Roles are not part of the DAG text; they travel in the column spec.

    :param CausalDag dag: The DAG to serialize.
    :return: ``unicode`` accepted by ``parse_dag``.
    """
    edges = [u"%s->%s" % edge for edge in sorted(dag.edges)]
    return u"; ".join(list(dag.nodes) + edges)


def load_dag(path):
    """
    Read and parse a ``.cdag`` file.

    :param FilePath path: The file to read.
    :return: A ``CausalDag``.
    """
    return parse_dag(path.getContent().decode("utf-8"))


def parents(dag, node):
    """
    :param CausalDag dag: The DAG.
    :param unicode node: A node name.

    :raises UnknownNode: If ``node`` is not in ``dag``.

    :return: A ``frozenset`` of the names of the direct causes of ``node``.
    """
    row = dag.adjacency[dag.index(node)]
    return frozenset(dag.nodes[j] for j in np.flatnonzero(row))


def children(dag, node):
    """
    :return: A ``frozenset`` of the names of the direct effects of ``node``.
    """
    column = dag.adjacency[:, dag.index(node)]
    return frozenset(dag.nodes[i] for i in np.flatnonzero(column))


def descendants(dag, node):
    """
    :return: A ``frozenset`` of every node reachable from ``node`` along
        directed edges, not including ``node`` itself.
    """
    dag.index(node)
    return frozenset(nx.descendants(dag._graph, node))


def has_directed_path(dag, source, target):
    """
    :return: ``True`` if ``target`` is a descendant of ``source``.
    """
    dag.index(target)
    return target in descendants(dag, source)


def mutilate(dag, target):
    """
    Remove every edge pointing into ``target``, as an intervention on
    ``target`` does.

    :param CausalDag dag: The DAG to copy.
    :param unicode target: The intervened node.

    :raises UnknownNode: If ``target`` is not in ``dag``.

    :return: A new ``CausalDag``; all other edges and the roles are kept.
    """
    dag.index(target)
    return CausalDag(
        nodes=dag.nodes,
        edges=frozenset(edge for edge in dag.edges if edge[1] != target),
        roles=dag.roles)


def with_roles(dag, roles):
    """
    :param CausalDag dag: The DAG to copy.
    :param dict roles: Mapping of node name to a ``NodeRole`` tag.

    :return: A copy of ``dag`` carrying ``roles``.
    """
    return CausalDag(nodes=dag.nodes, edges=dag.edges,
                     roles=frozenset(roles.items()))


def role_node(dag, role):
    """
    Find the node tagged with a role which must be unique.

    :param CausalDag dag: The DAG.
    :param unicode role: ``NodeRole.TREATMENT`` or ``NodeRole.OUTCOME``.

    :raises MissingRole: Unless exactly one node has ``role``.

    :return: The node name.
    """
    found = [name for name, tag in dag.roles if tag == role]
    if len(found) != 1:
        raise MissingRole(
            "Expected exactly one %s node, found %d." % (role, len(found)))
    return found[0]
