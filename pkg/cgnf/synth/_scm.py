# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.synth.test.test_scm -*-

"""
Synthetic structural causal models with known mechanisms.

An SCM document is YAML holding the DAG text and, for every node, its column
settings, its noise distribution and its mechanism::

    dag: "C; A; Y; C->A; C->Y; A->Y"
    nodes:
      C: {kind: discrete, cardinality: 3, role: confounder,
          noise: "categorical(0.5, 0.3, 0.2)", mechanism: "U"}
      A: {kind: discrete, cardinality: 2, role: treatment,
          noise: "uniform(0, 1)", mechanism: "U < 0.3 + 0.2 * C"}
      Y: {kind: continuous, role: outcome,
          noise: "normal(0, 1)", mechanism: "2 * A + C + U"}

``mechanism`` defaults to ``U``.  A discrete node is quantized (rounded half
away from zero, then clipped to ``0 .. cardinality - 1``) as soon as its
mechanism is evaluated, so its children read the discrete value.
"""

import numpy as np
import yaml

from characteristic import attributes
from eliot import Logger

from ..graph import (
    DagError, NodeRole, parse_dag, parents, mutilate, with_roles, role_node,
)
from ..train import ColumnSpec, TrainingError, make_dataset, quantize
from ._mechanism import (
    NOISE, MalformedScm, UnsupportedMechanism, parse_mechanism, parse_noise,
)
from ._logging import SAMPLE


__all__ = [
    "SyntheticScm", "parse_scm", "load_scm", "sample_noise", "propagate",
    "sample_scm", "intervened_scm", "linear_system", "analytic_covariance",
]


_logger = Logger()

_SETTINGS = frozenset([u"kind", u"cardinality", u"role", u"group_key",
                       u"noise", u"mechanism"])


@attributes(["dag", "specs", "mechanisms", "noises", "discretized"],
            defaults=dict(discretized=None))
class SyntheticScm(object):
    """
    A structural causal model ``X_i := f_i(parents(X_i), U_i)``.

    :ivar CausalDag dag: The DAG, carrying the node roles.
    :ivar tuple specs: ``ColumnSpec`` per node, in node order.
    :ivar dict mechanisms: Node name to ``Mechanism``.
    :ivar dict noises: Node name to ``NoiseDistribution``.
    :ivar discretized: The name of a shipped SCM which discretizes this
        one so that backdoor adjustment applies to it, or ``None``.
    """
    def __init__(self):
        """
        :raises MalformedScm: If a mechanism reads a non-parent or a node
            lacks a mechanism, a noise or a column spec.
        """
        self.specs = tuple(self.specs)
        if tuple(spec.name for spec in self.specs) != self.dag.nodes:
            raise MalformedScm("Column specs %r do not match DAG nodes %r" % (
                [spec.name for spec in self.specs], list(self.dag.nodes)))
        for node in self.dag.nodes:
            if node not in self.mechanisms or node not in self.noises:
                raise MalformedScm("Node %s needs a mechanism and a noise." % (
                    node,))
            unknown = self.mechanisms[node].names - parents(self.dag, node) - \
                {NOISE}
            if unknown:
                raise MalformedScm("Mechanism of %s reads non-parents: %s" % (
                    node, u", ".join(sorted(unknown))))
        keys = [spec for spec in self.specs if spec.group_key]
        if len(keys) > 1:
            raise MalformedScm("Several group-key nodes.")
        if keys and not keys[0].discrete:
            raise MalformedScm("Group-key node %s must be discrete." % (
                keys[0].name,))

    @property
    def treatment(self):
        return role_node(self.dag, NodeRole.TREATMENT)

    @property
    def outcome(self):
        return role_node(self.dag, NodeRole.OUTCOME)

    @property
    def group_key(self):
        """
        The name of the group-key node, or ``None``.
        """
        for spec in self.specs:
            if spec.group_key:
                return spec.name
        return None


def parse_scm(content):
    """
    :param unicode content: An SCM YAML document.

    :raises MalformedScm: If the document is not a valid SCM.

    :return: A ``SyntheticScm``.
    """
    try:
        raw = yaml.safe_load(content)
    except yaml.YAMLError as e:
        raise MalformedScm("SCM document is not valid YAML: %s" % (e,))
    if (not isinstance(raw, dict) or not {u"dag", u"nodes"} <= set(raw) or
            set(raw) - {u"dag", u"nodes", u"discretized"}):
        raise MalformedScm(
            "SCM document must be a mapping with 'dag', 'nodes' and "
            "optionally 'discretized'.")
    discretized = raw.get(u"discretized")
    if discretized is not None and not isinstance(discretized, str):
        raise MalformedScm("'discretized' must name an SCM.")
    try:
        dag = parse_dag(str(raw[u"dag"]))
    except DagError as e:
        raise MalformedScm("Invalid SCM DAG: %s" % (e,))
    nodes = raw[u"nodes"]
    if not isinstance(nodes, dict) or set(nodes) != set(dag.nodes):
        raise MalformedScm("'nodes' must describe exactly the DAG nodes %s" % (
            u", ".join(dag.nodes),))

    specs, mechanisms, noises, roles = [], {}, {}, {}
    for node in dag.nodes:
        settings = nodes[node]
        if not isinstance(settings, dict):
            raise MalformedScm("Settings of node %s must be a mapping." % (
                node,))
        unknown = set(settings) - _SETTINGS
        if unknown:
            raise MalformedScm("Node %s has unknown settings: %s" % (
                node, u", ".join(sorted(unknown))))
        if u"kind" not in settings or u"noise" not in settings:
            raise MalformedScm("Node %s needs a kind and a noise." % (node,))
        try:
            spec = ColumnSpec(
                name=node, kind=settings[u"kind"],
                cardinality=settings.get(u"cardinality"),
                role=settings.get(u"role", NodeRole.PLAIN),
                group_key=bool(settings.get(u"group_key", False)))
        except TrainingError as e:
            raise MalformedScm(str(e))
        specs.append(spec)
        if spec.role != NodeRole.PLAIN:
            roles[node] = spec.role
        noises[node] = parse_noise(settings[u"noise"])
        mechanisms[node] = parse_mechanism(
            settings.get(u"mechanism", NOISE),
            parents(dag, node) | {NOISE})
    return SyntheticScm(dag=with_roles(dag, roles), specs=specs,
                        mechanisms=mechanisms, noises=noises,
                        discretized=discretized)


def load_scm(path):
    """
    :param FilePath path: An SCM YAML file.
    :return: A ``SyntheticScm``.
    """
    return parse_scm(path.getContent().decode("utf-8"))


def sample_noise(scm, n, seed):
    """
    Draw the exogenous noise of ``n`` units.

    Columns are drawn in node order from one generator, so a given seed
    yields the same noise whatever is later intervened on.

    :param SyntheticScm scm: The SCM.
    :param int n: Number of units.
    :param int seed: The seed.

    :return: ``(n, d)`` float64 noise, one column per node.
    """
    rng = np.random.default_rng(seed)
    noise = np.empty((n, scm.dag.dimension))
    for i, node in enumerate(scm.dag.nodes):
        noise[:, i] = scm.noises[node].sample(rng, n)
    return noise


def propagate(scm, noise, interventions=None):
    """
    Evaluate the mechanisms in topological order.

    :param SyntheticScm scm: The SCM.
    :param noise: ``(n, d)`` noise values.
    :param dict interventions: Node name to the value it is set to,
        replacing its mechanism.

    :return: ``(n, d)`` float64 node values.
    """
    noise = np.asarray(noise, dtype=np.float64)
    interventions = interventions or {}
    unknown = set(interventions) - set(scm.dag.nodes)
    if unknown:
        raise MalformedScm("Cannot intervene on unknown nodes: %s" % (
            u", ".join(sorted(unknown)),))
    n = noise.shape[0]
    values = np.empty((n, scm.dag.dimension))
    env = {}
    for i in scm.dag.topo_order:
        node = scm.dag.nodes[i]
        if node in interventions:
            column = np.full(n, float(interventions[node]))
        else:
            env[NOISE] = noise[:, i]
            column = scm.mechanisms[node].evaluate(env, n)
            spec = scm.specs[i]
            if spec.discrete:
                column = quantize(column, spec.cardinality).astype(np.float64)
        values[:, i] = column
        env[node] = column
    return values


def sample_scm(scm, n, seed, interventions=None, logger=_logger):
    """
    Draw a dataset of ``n`` units by ancestral sampling.

    :param SyntheticScm scm: The SCM.
    :param int n: Number of units, at least 1.
    :param int seed: Seed of the noise.
    :param dict interventions: Optional ``do`` assignments.

    :return: A ``Dataset`` whose specs and roles are the SCM's.
    """
    if n < 1:
        raise MalformedScm("Cannot sample %r units." % (n,))
    with SAMPLE(logger, rows=n, seed=seed):
        values = propagate(scm, sample_noise(scm, n, seed), interventions)
        return make_dataset(scm.dag, list(scm.specs), values)


def intervened_scm(scm, node, value):
    """
    The SCM under ``do(node = value)``: edges into ``node`` are removed and
    its mechanism becomes the constant ``value``.

    The node keeps its noise distribution, so the same seed draws the same
    noise as in ``scm``.

    :return: A ``SyntheticScm``.
    """
    dag = mutilate(scm.dag, node)
    mechanisms = dict(scm.mechanisms)
    mechanisms[node] = parse_mechanism(repr(float(value)), ())
    return SyntheticScm(dag=dag, specs=scm.specs, mechanisms=mechanisms,
                        noises=scm.noises)


def linear_system(scm, nodes=None):
    """
    Write the mechanisms of ``nodes`` as ``x = c + B x + s U``.

    :param SyntheticScm scm: The SCM.
    :param nodes: The nodes whose mechanisms must be affine; the rows of all
        other nodes are zero.  Defaults to every node.

    :raises UnsupportedMechanism: If one of those mechanisms is not affine or
        the node is discrete.

    :return: ``(c, B, s)`` arrays of shapes ``(d,)``, ``(d, d)``, ``(d,)``.
    """
    d = scm.dag.dimension
    if nodes is None:
        nodes = scm.dag.nodes
    intercept, weights, scale = np.zeros(d), np.zeros((d, d)), np.zeros(d)
    for node in nodes:
        i = scm.dag.index(node)
        if scm.specs[i].discrete:
            raise UnsupportedMechanism(
                "Node %s is quantized, so it is not linear." % (node,))
        constant, terms = scm.mechanisms[node].affine()
        intercept[i] = constant
        for name, coefficient in terms.items():
            if name == NOISE:
                scale[i] = coefficient
            else:
                weights[i, scm.dag.index(name)] = coefficient
    return intercept, weights, scale


def analytic_covariance(scm):
    """
    The covariance of a linear SCM with Gaussian noise,
    ``(I - B)^-1 diag(s^2 var(U)) (I - B)^-T``.

    :raises UnsupportedMechanism: If the SCM is not linear-Gaussian.

    :return: ``(d, d)`` covariance in node order.
    """
    _, weights, scale = linear_system(scm)
    variances = np.array([scm.noises[node].variance
                          for node in scm.dag.nodes])
    inverse = np.linalg.inv(np.eye(scm.dag.dimension) - weights)
    return inverse.dot(np.diag(scale ** 2 * variances)).dot(inverse.T)
