# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.flow.test.test_model -*-

"""
The causal graphical normalizing flow.

Every variable ``x_i`` is mapped to noise ``z_i = tau_i(x_i; h_i)`` where the
context ``h_i`` is computed from the variable's DAG parents only and
``tau_i`` is the integral of a strictly positive network plus a bias::

    tau_i(x; h) = integral from 0 to x of g_i(t, h) dt + beta_i(h)

so the Jacobian of ``x -> z`` is triangular in topological order with
diagonal ``g_i(x_i, h_i)``.
"""

import numpy as np

from characteristic import attributes
from eliot import Logger

from ..graph import mutilate as mutilate_dag
from ..numeric import (
    NonFiniteInput, make_mlp, mlp_forward, LINEAR,
)
from ..numeric import _tape as T
from ._quadrature import clenshaw_curtis
from ._logging import BRACKET_EXPANDED


__all__ = [
    "FlowError", "DimensionMismatch", "RootNotBracketed",
    "FlowModel", "make_flow", "transform", "inverse", "log_density",
    "log_density_terms", "sample", "mutilated", "negative_log_likelihood",
    "DELTA", "CONTEXT_WIDTH", "QUADRATURE_NODES",
]


DELTA = 1e-6
CONTEXT_WIDTH = 10
QUADRATURE_NODES = 50

_BRACKET = 10.0
_MAX_DOUBLINGS = 60
_TOLERANCE = 1e-8
_MAX_BISECTIONS = 400
_CHUNK = 2048
_LOG_2PI = np.log(2 * np.pi)


class FlowError(ValueError):
    """
    A flow could not be built or evaluated.
    """


class DimensionMismatch(FlowError):
    """
    A unit or noise vector does not have one entry per DAG node.
    """


class RootNotBracketed(FlowError):
    """
    Inverting a transformer failed to find a bracket around the root.
    """


@attributes(["dag", "conditioners", "contexts", "integrands", "biases",
             "context_width", "quadrature_nodes"],
            defaults=dict(context_width=CONTEXT_WIDTH,
                          quadrature_nodes=QUADRATURE_NODES))
class FlowModel(object):
    """
    Parameters of a flow over a causal DAG.  All lists are indexed by node
    index.

    :ivar CausalDag dag: The graph the conditioners are masked by.
    :ivar list conditioners: ``Mlp`` from the masked unit vector to the
        context, or ``None`` for a node with a learned constant context.
    :ivar list contexts: ``(context_width,)`` arrays for the nodes without a
        conditioner, ``None`` elsewhere.
    :ivar list integrands: ``Mlp`` from ``(t, h)`` to the pre-activation of
        ``g_i``.
    :ivar list biases: ``Mlp`` from ``h`` to ``beta_i``.
    :ivar int context_width: Width of every context vector.
    :ivar int quadrature_nodes: Number of Clenshaw-Curtis nodes.
    """
    logger = Logger()

    def __init__(self):
        """
        :raises DimensionMismatch: If the per-node lists do not match the
            DAG.
        """
        d = self.dag.dimension
        self.conditioners = list(self.conditioners)
        self.contexts = list(self.contexts)
        self.integrands = list(self.integrands)
        self.biases = list(self.biases)
        for name in ("conditioners", "contexts", "integrands", "biases"):
            if len(getattr(self, name)) != d:
                raise DimensionMismatch(
                    "Flow over %d nodes has %d %s" % (
                        d, len(getattr(self, name)), name))
        for i in range(d):
            if (self.conditioners[i] is None) == (self.contexts[i] is None):
                raise FlowError(
                    "Node %s needs exactly one of a conditioner and a "
                    "constant context." % (self.dag.nodes[i],))

    @property
    def dimension(self):
        return self.dag.dimension

    def parameters(self):
        """
        :return: Every parameter array, node by node in node order: the
            conditioner's ``[W0, b0, ...]`` (or the constant context), then
            the integrand's, then the bias network's.
        """
        result = []
        for i in range(self.dimension):
            if self.conditioners[i] is None:
                result.append(self.contexts[i])
            else:
                result.extend(self.conditioners[i].parameters())
            result.extend(self.integrands[i].parameters())
            result.extend(self.biases[i].parameters())
        return result

    def with_parameters(self, arrays):
        """
        :param list arrays: Replacement arrays in ``parameters()`` order.
        :return: A new ``FlowModel`` with the same architecture.
        """
        arrays = list(arrays)
        position = [0]

        def take(count):
            start = position[0]
            position[0] += count
            return arrays[start:position[0]]

        conditioners, contexts, integrands, biases = [], [], [], []
        for i in range(self.dimension):
            if self.conditioners[i] is None:
                conditioners.append(None)
                contexts.append(take(1)[0])
            else:
                net = self.conditioners[i]
                conditioners.append(
                    net.with_parameters(take(len(net.parameters()))))
                contexts.append(None)
            for source, target in [(self.integrands[i], integrands),
                                   (self.biases[i], biases)]:
                target.append(
                    source.with_parameters(take(len(source.parameters()))))
        if position[0] != len(arrays):
            raise DimensionMismatch("%d arrays given, %d used" % (
                len(arrays), position[0]))
        return FlowModel(
            dag=self.dag, conditioners=conditioners, contexts=contexts,
            integrands=integrands, biases=biases,
            context_width=self.context_width,
            quadrature_nodes=self.quadrature_nodes)


def make_flow(dag, rng, conditioner_widths=(40, 30, 20),
              transformer_widths=(15, 10, 5), context_width=CONTEXT_WIDTH,
              quadrature_nodes=QUADRATURE_NODES):
    """
    Build a randomly initialized flow.

    Nodes without parents get a learned constant context initialized to
    zero; every other node gets a conditioner network.

    :param CausalDag dag: The causal graph.
    :param numpy.random.Generator rng: Source of the initial weights.
    :param conditioner_widths: Hidden widths of each conditioner.
    :param transformer_widths: Hidden widths of each integrand network.
    :param int context_width: Width of ``h_i``.
    :param int quadrature_nodes: Clenshaw-Curtis node count.

    :return: A ``FlowModel``.
    """
    d = dag.dimension
    conditioners, contexts, integrands, biases = [], [], [], []
    for i in range(d):
        if dag.adjacency[i].any():
            conditioners.append(make_mlp(
                [d] + list(conditioner_widths) + [context_width], rng))
            contexts.append(None)
        else:
            conditioners.append(None)
            contexts.append(np.zeros(context_width))
        integrands.append(make_mlp(
            [1 + context_width] + list(transformer_widths) + [1], rng))
        biases.append(make_mlp([context_width, 1], rng, output=LINEAR))
    return FlowModel(dag=dag, conditioners=conditioners, contexts=contexts,
                     integrands=integrands, biases=biases,
                     context_width=context_width,
                     quadrature_nodes=quadrature_nodes)


def mutilated(model, target):
    """
    The flow over ``mutilate(model.dag, target)``, sharing every parameter.

    Combined with a clamp on ``target`` this is the intervened model: the
    target's own mechanism is never consulted and every other node keeps its
    parents.

    :return: A ``FlowModel``.
    """
    return FlowModel(
        dag=mutilate_dag(model.dag, target),
        conditioners=model.conditioners, contexts=model.contexts,
        integrands=model.integrands, biases=model.biases,
        context_width=model.context_width,
        quadrature_nodes=model.quadrature_nodes)


def _context(model, i, x, tape):
    """
    ``h_i`` for every row of ``x``; only the DAG parents of node ``i`` pass
    the mask.
    """
    conditioner = model.conditioners[i]
    if conditioner is None:
        context = model.contexts[i]
        if tape is not None:
            context = tape.watch(context)
        return T.add(np.zeros((x.shape[0], model.context_width)), context)
    mask = model.dag.adjacency[i].astype(np.float64)
    return mlp_forward(conditioner, x * mask, tape)


def _integrand(model, i, t, h, tape):
    """
    ``g_i(t, h) = elu(net(t, h)) + 1 + DELTA`` as an ``(m, 1)`` value.
    """
    raw = mlp_forward(model.integrands[i], T.concat([t, h], axis=1), tape)
    return T.add(T.elu(raw), 1.0 + DELTA)


def _tau(model, i, xi, h, tape=None):
    """
    ``tau_i(x; h)`` for a ``(n,)`` array of ``x`` and ``(n, width)``
    contexts, integrating over ``[0, x]`` with Clenshaw-Curtis.
    """
    n = xi.shape[0]
    nodes, weights = clenshaw_curtis(model.quadrature_nodes)
    count = nodes.shape[0]
    t = (xi[:, None] * ((nodes + 1.0) / 2.0)).reshape(-1, 1)
    g = T.reshape(
        _integrand(model, i, t, T.repeat(h, count), tape), (n, count))
    integral = T.mul(T.matmul(g, weights[:, None]), xi[:, None] / 2.0)
    bias = mlp_forward(model.biases[i], h, tape)
    return T.take(T.add(integral, bias), 0)


def _log_slope(model, i, xi, h, tape=None):
    return T.log(T.take(_integrand(model, i, xi[:, None], h, tape), 0))


def _check_units(model, x, what):
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != model.dimension:
        raise DimensionMismatch(
            "Expected %s with %d entries, got shape %r" % (
                what, model.dimension, x.shape))
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("%s contains non-finite values." % (what,))
    return x, single


def _forward_terms(model, x, tape=None):
    """
    :return: ``(z_terms, log_slopes)``, two lists of per-node ``(n,)``
        values.
    """
    zs, slopes = [], []
    for i in range(model.dimension):
        h = _context(model, i, x, tape)
        zs.append(_tau(model, i, x[:, i], h, tape))
        slopes.append(_log_slope(model, i, x[:, i], h, tape))
    return zs, slopes


def _chunks(n):
    for start in range(0, n, _CHUNK):
        yield slice(start, min(n, start + _CHUNK))


def transform(model, x):
    """
    Map units to noise.

    :param FlowModel model: The flow.
    :param x: A unit vector ``(d,)`` or a batch ``(n, d)``.

    :raises DimensionMismatch: If the last extent is not ``d``.
    :raises NonFiniteInput: If ``x`` is not finite.

    :return: ``(z, logdet)``: noise of the same shape as ``x`` and the log
        absolute Jacobian determinant (a float, or ``(n,)`` for a batch).
    """
    x, single = _check_units(model, x, u"unit")
    z = np.empty_like(x)
    logdet = np.empty(x.shape[0])
    for rows in _chunks(x.shape[0]):
        zs, slopes = _forward_terms(model, x[rows])
        z[rows] = np.stack(zs, axis=1)
        logdet[rows] = np.sum(slopes, axis=0)
    if single:
        return z[0], float(logdet[0])
    return z, logdet


def log_density_terms(model, x):
    """
    Per-node log-density contributions
    ``log N(z_i; 0, 1) + log g_i(x_i, h_i)``.

    :param x: A ``(n, d)`` batch.
    :return: A ``(n, d)`` array whose row sums are ``log_density``.
    """
    x, _ = _check_units(model, x, u"unit")
    terms = np.empty_like(x)
    for rows in _chunks(x.shape[0]):
        zs, slopes = _forward_terms(model, x[rows])
        z = np.stack(zs, axis=1)
        terms[rows] = -0.5 * (z * z + _LOG_2PI) + np.stack(slopes, axis=1)
    return terms


def log_density(model, x):
    """
    ``log P_X(x) = log P_Z(T x) + log |det J_T(x)|`` with a standard normal
    ``P_Z``.

    :return: A float for a single unit, or ``(n,)`` for a batch.
    """
    single = np.ndim(x) == 1
    total = log_density_terms(model, np.atleast_2d(x)).sum(axis=1)
    if single:
        return float(total[0])
    return total


def negative_log_likelihood(model, x, tape):
    """
    Mean negative log-likelihood of a batch, recorded on ``tape``.

    :param FlowModel model: The flow; its parameters are watched on ``tape``.
    :param numpy.ndarray x: ``(n, d)`` training rows.
    :param GradientTape tape: The tape to record on.

    :return: A one-element ``Variable``.
    """
    x, _ = _check_units(model, x, u"unit")
    zs, slopes = _forward_terms(model, x, tape)
    total = None
    for z, slope in zip(zs, slopes):
        term = T.sub(slope, T.mul(T.square(z), 0.5))
        total = term if total is None else T.add(total, term)
    mean = T.mean(total)
    return T.sub(0.5 * model.dimension * _LOG_2PI, mean)


def _bisect(model, i, target, h):
    """
    Solve ``tau_i(x; h) = target`` row by row.
    """
    n = target.shape[0]
    lo = np.full(n, -_BRACKET)
    hi = np.full(n, _BRACKET)
    doublings = 0
    while True:
        low_bad = _tau(model, i, lo, h) > target
        high_bad = _tau(model, i, hi, h) < target
        if not (low_bad.any() or high_bad.any()):
            break
        if doublings == _MAX_DOUBLINGS:
            raise RootNotBracketed(
                "No bracket for node %s after %d doublings" % (
                    model.dag.nodes[i], doublings))
        lo = np.where(low_bad, 2 * lo, lo)
        hi = np.where(high_bad, 2 * hi, hi)
        doublings += 1
    if doublings:
        BRACKET_EXPANDED(
            node=model.dag.nodes[i], doublings=doublings).write(model.logger)
    for _ in range(_MAX_BISECTIONS):
        open_rows = (hi - lo) > _TOLERANCE
        if not open_rows.any():
            break
        mid = (lo + hi) / 2.0
        above = _tau(model, i, mid, h) > target
        hi = np.where(open_rows & above, mid, hi)
        lo = np.where(open_rows & ~above, mid, lo)
    return (lo + hi) / 2.0


def _clamp_column(value, n):
    column = np.broadcast_to(np.asarray(value, dtype=np.float64), (n,))
    if not np.all(np.isfinite(column)):
        raise NonFiniteInput("Clamp values must be finite.")
    return column


def inverse(model, z, clamps=None):
    """
    Map noise back to units, visiting the nodes in topological order.

    :param FlowModel model: The flow.
    :param z: Noise, ``(d,)`` or ``(n, d)``.
    :param dict clamps: Optional mapping of node name to a value (or a
        ``(n,)`` array of per-row values).  Clamped nodes are set to that
        value rather than solved for, which is the action of an
        intervention on them.

    :raises DimensionMismatch: If the last extent is not ``d``.
    :raises NonFiniteInput: If ``z`` or a clamp value is not finite.
    :raises RootNotBracketed: If a root cannot be bracketed.
    :raises UnknownNode: If a clamp names a node not in the DAG.

    :return: Units with the shape of ``z``; un-clamped coordinates satisfy
        ``transform(inverse(z)) == z`` up to the solver tolerance.
    """
    z, single = _check_units(model, z, u"noise")
    clamps = dict(
        (model.dag.index(name), value)
        for name, value in (clamps or {}).items())
    x = np.zeros_like(z)
    for rows in _chunks(z.shape[0]):
        n = rows.stop - rows.start
        block = np.zeros((n, model.dimension))
        for i in model.dag.topo_order:
            if i in clamps:
                block[:, i] = _clamp_column(clamps[i], z.shape[0])[rows]
                continue
            h = _context(model, i, block, None)
            block[:, i] = _bisect(model, i, z[rows, i], h)
        x[rows] = block
    if single:
        return x[0]
    return x


def sample(model, n, seed, clamps=None):
    """
    Draw ``z ~ N(0, I)`` and invert it.

    With clamps this samples the interventional distribution of the
    clamped nodes.

    :param int n: Number of units, at least 1.
    :param int seed: Seed of the base noise.
    :param dict clamps: As for ``inverse``.

    :return: ``(n, d)`` units.
    """
    if n < 1:
        raise ValueError("Sample size must be at least 1, not %r" % (n,))
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, model.dimension))
    return inverse(model, z, clamps)
