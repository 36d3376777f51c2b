# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.flow.test.test_quadrature -*-

"""
Clenshaw-Curtis quadrature on ``[-1, 1]``.
"""

import numpy as np


_CACHE = {}


def clenshaw_curtis(count):
    """
    Nodes and weights of the ``count``-point Clenshaw-Curtis rule.

    The rule integrates polynomials of degree ``count - 1`` exactly.  Results
    are cached and returned read-only.

    :param int count: Number of nodes, at least 2.

    :return: ``(nodes, weights)``, two ``(count,)`` arrays; the nodes are
        ``cos(k * pi / (count - 1))``, from 1 down to -1.
    """
    if count in _CACHE:
        return _CACHE[count]
    if count < 2:
        raise ValueError("Clenshaw-Curtis needs at least 2 nodes.")
    n = count - 1
    theta = np.pi * np.arange(count) / n
    nodes = np.cos(theta)
    weights = np.zeros(count)
    inner = theta[1:-1]
    v = np.ones(n - 1)
    if n % 2 == 0:
        weights[0] = weights[n] = 1.0 / (n * n - 1)
        for k in range(1, n // 2):
            v -= 2 * np.cos(2 * k * inner) / (4 * k * k - 1)
        v -= np.cos(n * inner) / (n * n - 1)
    else:
        weights[0] = weights[n] = 1.0 / (n * n)
        for k in range(1, (n - 1) // 2 + 1):
            v -= 2 * np.cos(2 * k * inner) / (4 * k * k - 1)
    weights[1:-1] = 2 * v / n
    nodes.setflags(write=False)
    weights.setflags(write=False)
    _CACHE[count] = (nodes, weights)
    return nodes, weights
