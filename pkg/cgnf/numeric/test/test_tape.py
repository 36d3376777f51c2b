# Copyright cgnf developers.  See LICENSE file for details.

"""
Tests for ``cgnf.numeric._tape``.
"""

import numpy as np

from twisted.trial.unittest import SynchronousTestCase

from .. import GradientTape, LossNotScalar, NodeNotOnTape, ShapeMismatch
from .. import _tape as T
from ..testtools import central_differences, relative_error


def check_primitive(case, build, *shapes):
    """
    Assert that the gradient of ``sum(build(*inputs) * weights)`` matches
    central finite differences within relative error ``1e-4``.

    :param case: The running test case.
    :param build: Callable taking tape values and returning a tape value.
    :param shapes: Shapes of the random inputs.
    """
    rng = np.random.default_rng(7)
    inputs = [rng.uniform(0.5, 1.5, size=shape) for shape in shapes]
    out_shape = np.shape(T.value_of(build(*inputs)))
    weights = rng.normal(size=out_shape)

    tape = GradientTape()
    leaves = [tape.watch(x) for x in inputs]
    loss = T.sum(T.mul(build(*leaves), weights))
    analytic = tape.backward(loss, leaves)
    numeric = central_differences(
        lambda: np.sum(T.value_of(build(*inputs)) * weights), inputs)
    case.assertLess(relative_error(analytic, numeric), 1e-4)


class BackwardTests(SynchronousTestCase):
    """
    Tests for ``GradientTape.backward``.
    """
    def test_square(self):
        """
        The gradient of ``x ** 2`` at 3 is 6.
        """
        tape = GradientTape()
        x = tape.watch(np.array(3.0))
        [gradient] = tape.backward(T.square(x), [x])
        self.assertEqual(6.0, gradient)

    def test_disconnected(self):
        """
        A leaf which the loss does not depend on gets a zero gradient of its
        own shape.
        """
        tape = GradientTape()
        x = tape.watch(np.array([1.0, 2.0]))
        p = tape.watch(np.ones((2, 3)))
        loss = T.sum(T.exp(x))
        gradients = tape.backward(loss, [x, p])
        self.assertEqual(
            (np.exp([1.0, 2.0]).tolist(), np.zeros((2, 3)).tolist()),
            (gradients[0].tolist(), gradients[1].tolist()))

    def test_reused_value(self):
        """
        A value used twice accumulates both contributions.
        """
        tape = GradientTape()
        x = tape.watch(np.array(2.0))
        loss = T.add(T.mul(x, x), x)
        [gradient] = tape.backward(loss, [x])
        self.assertEqual(5.0, gradient)

    def test_watch_cached(self):
        """
        Watching the same array twice gives the same leaf.
        """
        tape = GradientTape()
        array = np.zeros(3)
        self.assertIs(tape.watch(array), tape.watch(array))

    def test_loss_not_scalar(self):
        """
        A loss with more than one element is rejected.
        """
        tape = GradientTape()
        x = tape.watch(np.ones(2))
        self.assertRaises(LossNotScalar, tape.backward, T.exp(x), [x])

    def test_other_tape(self):
        """
        A loss recorded on a different tape is rejected.
        """
        tape, other = GradientTape(), GradientTape()
        x = other.watch(np.array(1.0))
        self.assertRaises(NodeNotOnTape, tape.backward, T.exp(x), [x])

    def test_plain_loss(self):
        """
        A plain array is not a tape node.
        """
        tape = GradientTape()
        x = tape.watch(np.array(1.0))
        self.assertRaises(NodeNotOnTape, tape.backward, np.array(1.0), [x])

    def test_untaped(self):
        """
        Primitives given only plain arrays return plain arrays.
        """
        result = T.tanh(T.matmul(np.ones((2, 3)), np.ones((3, 1))))
        self.assertIsInstance(result, np.ndarray)

    def test_matmul_shape(self):
        """
        ``matmul`` rejects operands whose inner extents differ.
        """
        self.assertRaises(
            ShapeMismatch, T.matmul, np.ones((2, 3)), np.ones((2, 3)))


class PrimitiveGradientTests(SynchronousTestCase):
    """
    Every primitive's vector-Jacobian product matches finite differences.
    """
    def test_add_broadcast(self):
        check_primitive(self, T.add, (4, 3), (3,))

    def test_sub_broadcast(self):
        check_primitive(self, T.sub, (4, 1), (4, 3))

    def test_mul_broadcast(self):
        check_primitive(self, T.mul, (4, 3), (1, 3))

    def test_div(self):
        check_primitive(self, T.div, (4, 3), (4, 3))

    def test_neg(self):
        check_primitive(self, T.neg, (5,))

    def test_matmul(self):
        check_primitive(self, T.matmul, (4, 3), (3, 2))

    def test_tanh(self):
        check_primitive(self, T.tanh, (4, 3))

    def test_elu(self):
        check_primitive(self, lambda a: T.elu(T.sub(a, 1.0)), (6, 3))

    def test_exp(self):
        check_primitive(self, T.exp, (4,))

    def test_log(self):
        check_primitive(self, T.log, (4,))

    def test_square(self):
        check_primitive(self, T.square, (2, 2))

    def test_sum_axis(self):
        check_primitive(self, lambda a: T.sum(a, axis=1), (4, 3))

    def test_mean(self):
        check_primitive(self, lambda a: T.mean(a, axis=0), (4, 3))

    def test_reshape(self):
        check_primitive(self, lambda a: T.reshape(a, (3, 4)), (4, 3))

    def test_repeat(self):
        check_primitive(self, lambda a: T.repeat(a, 3), (2, 3))

    def test_concat(self):
        check_primitive(
            self, lambda a, b: T.concat([a, b], axis=1), (4, 1), (4, 2))

    def test_take(self):
        check_primitive(self, lambda a: T.take(a, 1), (4, 3))
