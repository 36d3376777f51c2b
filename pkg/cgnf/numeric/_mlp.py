# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.numeric.test.test_mlp -*-

"""
Fully connected feed-forward networks.
"""

import numpy as np

from characteristic import attributes

from . import _tape as T
from ._tape import ShapeMismatch, NonFiniteInput


TANH = u"tanh"
LINEAR = u"linear"

_ACTIVATIONS = {
    TANH: T.tanh,
    LINEAR: lambda x: x,
}


@attributes(["widths", "weights", "biases", "activations"])
class Mlp(object):
    """
    A feed-forward network ``x -> act(x @ W + b)`` layer after layer.

    :ivar tuple widths: Layer widths, input first; ``len(widths) - 1`` layers.
    :ivar list weights: ``(widths[k], widths[k + 1])`` arrays.
    :ivar list biases: ``(widths[k + 1],)`` arrays.
    :ivar tuple activations: One activation name per layer.
    """
    def __init__(self):
        """
        :raises ShapeMismatch: If the layer arrays do not compose.
        """
        self.widths = tuple(int(w) for w in self.widths)
        self.activations = tuple(self.activations)
        layers = len(self.widths) - 1
        if layers < 1 or not (
                len(self.weights) == len(self.biases) ==
                len(self.activations) == layers):
            raise ShapeMismatch("Network needs one weight, bias and "
                                "activation per layer.")
        for k in range(layers):
            expected = (self.widths[k], self.widths[k + 1])
            if self.weights[k].shape != expected:
                raise ShapeMismatch(
                    "Layer %d weight has shape %r, expected %r" % (
                        k, self.weights[k].shape, expected))
            if self.biases[k].shape != expected[1:]:
                raise ShapeMismatch(
                    "Layer %d bias has shape %r, expected %r" % (
                        k, self.biases[k].shape, expected[1:]))
            if self.activations[k] not in _ACTIVATIONS:
                raise ValueError(
                    "Unknown activation %r" % (self.activations[k],))

    def parameters(self):
        """
        :return: The parameter arrays, ``[W0, b0, W1, b1, ...]``.
        """
        result = []
        for weight, bias in zip(self.weights, self.biases):
            result.extend([weight, bias])
        return result

    def parameter_count(self):
        """
        :return: ``sum(w_in * w_out + w_out)`` over the layers.
        """
        return sum(a * b + b for a, b in zip(self.widths, self.widths[1:]))

    def with_parameters(self, arrays):
        """
        :param list arrays: Replacement arrays in ``parameters()`` order.
        :return: A new ``Mlp`` with the same architecture.
        """
        return Mlp(widths=self.widths, weights=list(arrays[0::2]),
                   biases=list(arrays[1::2]), activations=self.activations)


def make_mlp(widths, rng, hidden=TANH, output=LINEAR):
    """
    Build a network with uniform ``+-sqrt(6 / (fan_in + fan_out))`` weights
    and zero biases.

    :param list widths: Layer widths, input first.
    :param numpy.random.Generator rng: Source of the initial weights.
    :param unicode hidden: Activation of every layer but the last.
    :param unicode output: Activation of the last layer.

    :return: An ``Mlp``.
    """
    weights = []
    biases = []
    for fan_in, fan_out in zip(widths, widths[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    layers = len(widths) - 1
    return Mlp(widths=widths, weights=weights, biases=biases,
               activations=[hidden] * (layers - 1) + [output])


def mlp_forward(net, input, tape=None):
    """
    Evaluate ``net`` on a batch.

    :param Mlp net: The network.
    :param input: ``(n, widths[0])`` array or ``Variable``.
    :param GradientTape tape: If given, the parameters are watched on it and
        the computation is recorded so it can be differentiated.

    :raises ShapeMismatch: If the input width is wrong.
    :raises NonFiniteInput: If the input is not finite.

    :return: ``(n, widths[-1])`` output.
    """
    value = T.value_of(input)
    if value.ndim != 2 or value.shape[1] != net.widths[0]:
        raise ShapeMismatch("Network expects (n, %d) input, got %r" % (
            net.widths[0], value.shape))
    if not np.all(np.isfinite(value)):
        raise NonFiniteInput("Network input is not finite.")
    x = input
    for weight, bias, activation in zip(
            net.weights, net.biases, net.activations):
        if tape is not None:
            weight, bias = tape.watch(weight), tape.watch(bias)
        x = _ACTIVATIONS[activation](T.add(T.matmul(x, weight), bias))
    return x
