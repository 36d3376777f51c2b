# Copyright cgnf developers.  See LICENSE file for details.

"""
Hand-built flows for tests.
"""

import numpy as np

from ..numeric import Mlp, LINEAR
from ._model import FlowModel, DELTA, CONTEXT_WIDTH


def _constant(widths, value):
    return Mlp(widths=widths, weights=[np.zeros(tuple(widths))],
               biases=[np.full(widths[1], float(value))],
               activations=[LINEAR])


def constant_flow(dag, slope=1.0):
    """
    A flow whose every integrand is the constant ``slope`` and whose biases
    are zero, so ``z = slope * x`` coordinate by coordinate.

    :param CausalDag dag: The graph.
    :param float slope: Positive slope; 1 gives the identity flow.

    :return: A ``FlowModel`` with constant contexts only.
    """
    target = float(slope) - 1.0 - DELTA
    if target >= 0:
        raw = target
    else:
        # elu(raw) = exp(raw) - 1 for negative raw
        raw = np.log(float(slope) - DELTA)
    d = dag.dimension
    return FlowModel(
        dag=dag,
        conditioners=[None] * d,
        contexts=[np.zeros(CONTEXT_WIDTH) for _ in range(d)],
        integrands=[_constant([1 + CONTEXT_WIDTH, 1], raw)
                    for _ in range(d)],
        biases=[_constant([CONTEXT_WIDTH, 1], 0.0) for _ in range(d)])


def linear_gaussian_flow(dag, scales, coefficients):
    """
    A flow encoding ``x_i = sum_j c_ij x_j + s_i z_i``, that is
    ``z_i = (x_i - sum_j c_ij x_j) / s_i``.

    The parent term enters through the bias network, fed by a one-layer
    linear conditioner which copies the masked unit into the context.

    :param CausalDag dag: The graph; ``dag.dimension`` must not exceed the
        context width.
    :param dict scales: Node name to ``s_i``; missing nodes use 1.
    :param dict coefficients: ``(parent, child)`` to ``c_ij``.

    :return: A ``FlowModel``.
    """
    d = dag.dimension
    conditioners, contexts, integrands, biases = [], [], [], []
    for i, node in enumerate(dag.nodes):
        slope = 1.0 / scales.get(node, 1.0)
        weight = np.zeros((d, CONTEXT_WIDTH))
        weight[:d, :d] = np.eye(d)
        conditioners.append(Mlp(
            widths=[d, CONTEXT_WIDTH], weights=[weight],
            biases=[np.zeros(CONTEXT_WIDTH)], activations=[LINEAR]))
        contexts.append(None)
        integrands.append(constant_flow(dag, slope).integrands[0])
        bias = np.zeros((CONTEXT_WIDTH, 1))
        for (parent, child), c in coefficients.items():
            if child == node:
                bias[dag.index(parent), 0] = -c * slope
        biases.append(Mlp(
            widths=[CONTEXT_WIDTH, 1], weights=[bias], biases=[np.zeros(1)],
            activations=[LINEAR]))
    return FlowModel(dag=dag, conditioners=conditioners, contexts=contexts,
                     integrands=integrands, biases=biases)
