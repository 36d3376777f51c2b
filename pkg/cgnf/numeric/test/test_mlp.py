# Copyright cgnf developers.  See LICENSE file for details.

"""
Tests for ``cgnf.numeric._mlp``.
"""

import numpy as np

from twisted.trial.unittest import SynchronousTestCase

from .. import (
    Mlp, make_mlp, mlp_forward, GradientTape, ShapeMismatch, NonFiniteInput,
    LINEAR,
)
from .. import _tape as T
from ..testtools import central_differences, relative_error


class MlpTests(SynchronousTestCase):
    """
    Tests for ``Mlp`` and ``make_mlp``.
    """
    def test_parameter_count(self):
        """
        The parameter count is the sum of ``w_in * w_out + w_out``.
        """
        net = make_mlp([3, 40, 30, 20, 10], np.random.default_rng(0))
        self.assertEqual(
            (3 * 40 + 40 + 40 * 30 + 30 + 30 * 20 + 20 + 20 * 10 + 10,
             net.parameter_count()),
            (sum(p.size for p in net.parameters()), net.parameter_count()))

    def test_initial_bounds(self):
        """
        Initial weights lie within ``sqrt(6 / (fan_in + fan_out))`` and
        biases are zero.
        """
        net = make_mlp([4, 6], np.random.default_rng(1))
        self.assertEqual(
            (True, [0.0] * 6),
            (bool(np.all(np.abs(net.weights[0]) <= np.sqrt(0.6))),
             net.biases[0].tolist()))

    def test_activations(self):
        """
        Hidden layers use ``tanh`` and the output layer is linear.
        """
        net = make_mlp([2, 5, 5, 1], np.random.default_rng(0))
        self.assertEqual((u"tanh", u"tanh", u"linear"), net.activations)

    def test_shapes_must_compose(self):
        """
        Weights that do not match the declared widths are rejected.
        """
        self.assertRaises(
            ShapeMismatch, Mlp, widths=[2, 3], weights=[np.zeros((3, 2))],
            biases=[np.zeros(3)], activations=[LINEAR])

    def test_with_parameters(self):
        """
        ``with_parameters`` keeps the architecture and swaps the arrays.
        """
        net = make_mlp([2, 3, 1], np.random.default_rng(0))
        zeros = [np.zeros_like(p) for p in net.parameters()]
        other = net.with_parameters(zeros)
        self.assertEqual(
            (net.widths, [0.0]),
            (other.widths, mlp_forward(other, np.ones((1, 2)))[0].tolist()))


class ForwardTests(SynchronousTestCase):
    """
    Tests for ``mlp_forward``.
    """
    def test_zero_network(self):
        """
        A network with zero weights and biases outputs zeros.
        """
        net = make_mlp([3, 4, 2], np.random.default_rng(0))
        net = net.with_parameters([np.zeros_like(p) for p in net.parameters()])
        output = mlp_forward(net, np.random.default_rng(1).normal(size=(5, 3)))
        self.assertEqual(np.zeros((5, 2)).tolist(), output.tolist())

    def test_identity_network(self):
        """
        One linear layer with the identity matrix and zero bias returns its
        input.
        """
        net = Mlp(widths=[3, 3], weights=[np.eye(3)], biases=[np.zeros(3)],
                  activations=[LINEAR])
        v = np.array([[0.5, -1.0, 2.0]])
        self.assertEqual(v.tolist(), mlp_forward(net, v).tolist())

    def test_deterministic(self):
        """
        The same seed and input give bit-identical outputs.
        """
        x = np.linspace(-1, 1, 12).reshape(4, 3)
        first = mlp_forward(make_mlp([3, 8, 2], np.random.default_rng(5)), x)
        second = mlp_forward(make_mlp([3, 8, 2], np.random.default_rng(5)), x)
        self.assertEqual(first.tobytes(), second.tobytes())

    def test_wrong_width(self):
        """
        An input whose last extent differs from the first width is rejected.
        """
        net = make_mlp([3, 2], np.random.default_rng(0))
        self.assertRaises(ShapeMismatch, mlp_forward, net, np.ones((2, 4)))

    def test_non_finite(self):
        """
        ``nan`` inputs are rejected.
        """
        net = make_mlp([2, 2], np.random.default_rng(0))
        self.assertRaises(
            NonFiniteInput, mlp_forward, net, np.array([[0.0, np.nan]]))

    def test_recorded(self):
        """
        Given a tape, the parameters are watched and the output is a tape
        value.
        """
        net = make_mlp([2, 3, 1], np.random.default_rng(0))
        tape = GradientTape()
        output = mlp_forward(net, np.ones((4, 2)), tape)
        self.assertIs(tape, output.tape)

    def test_gradient(self):
        """
        Gradients of a random two-layer network match central finite
        differences with ``h = 1e-5`` within relative error ``1e-5``.
        """
        rng = np.random.default_rng(11)
        net = make_mlp([3, 5, 2], rng)
        x = rng.normal(size=(6, 3))
        target = rng.normal(size=(6, 2))

        def loss_of(output):
            return T.mean(T.square(T.sub(output, target)))

        tape = GradientTape()
        loss = loss_of(mlp_forward(net, x, tape))
        params = net.parameters()
        analytic = tape.backward(loss, [tape.watch(p) for p in params])
        numeric = central_differences(
            lambda: loss_of(mlp_forward(net, x)), params)
        self.assertLess(relative_error(analytic, numeric), 1e-5)
