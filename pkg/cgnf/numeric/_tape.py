# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.numeric.test.test_tape -*-

"""
Reverse-mode gradient accumulation over numpy arrays.

Every primitive in this module accepts plain ``numpy`` arrays or ``Variable``
instances.  When none of its inputs is a ``Variable`` a primitive simply
computes its value, so the same model code serves inference (plain arrays)
and training (values recorded on a ``GradientTape``).
"""

import numpy as np


__all__ = [
    "NumericError", "ShapeMismatch", "NonFiniteInput", "LossNotScalar",
    "NodeNotOnTape", "NonFiniteGradient",
    "GradientTape", "Variable", "value_of",
    "add", "sub", "mul", "div", "neg", "matmul", "tanh", "elu", "exp",
    "log", "square", "sum", "mean", "reshape", "repeat", "concat", "take",
]


class NumericError(ValueError):
    """
    A numeric primitive was given inputs it cannot work with.
    """


class ShapeMismatch(NumericError):
    """
    Array shapes do not compose.
    """


class NonFiniteInput(NumericError):
    """
    An input contained ``nan`` or an infinity.
    """


class LossNotScalar(NumericError):
    """
    ``backward`` was asked to differentiate something with more than one
    element.
    """


class NodeNotOnTape(NumericError):
    """
    A ``Variable`` belongs to a different ``GradientTape`` (or none).
    """


class NonFiniteGradient(NumericError):
    """
    A gradient contained ``nan`` or an infinity.
    """


class Variable(object):
    """
    A value recorded on a ``GradientTape``.

    :ivar GradientTape tape: The tape this value was recorded on.
    :ivar numpy.ndarray value: The forward value.
    :ivar int index: Position in the tape's execution order.
    """
    __slots__ = ("tape", "value", "index")

    def __init__(self, tape, value, index):
        self.tape = tape
        self.value = value
        self.index = index

    @property
    def shape(self):
        return self.value.shape

    def __repr__(self):
        return "<Variable #%d shape=%r>" % (self.index, self.value.shape)

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __neg__(self):
        return neg(self)

    def __matmul__(self, other):
        return matmul(self, other)

    def __rmatmul__(self, other):
        return matmul(other, self)


class _Record(object):
    """
    One executed primitive: its parents and their vector-Jacobian products.
    """
    __slots__ = ("parents", "vjps")

    def __init__(self, parents, vjps):
        self.parents = parents
        self.vjps = vjps


class GradientTape(object):
    """
    Records primitives in execution order and replays them backwards.
    """
    def __init__(self):
        self._records = []
        self._watched = {}

    def __len__(self):
        return len(self._records)

    def watch(self, array):
        """
        Register ``array`` (typically a model parameter) as a leaf.

        Watching the same array object twice returns the same ``Variable``.

        :param numpy.ndarray array: The leaf value.
        :return: A ``Variable`` on this tape.
        """
        key = id(array)
        if key in self._watched:
            return self._watched[key][1]
        variable = self._record(np.asarray(array, dtype=np.float64), (), ())
        # Hold a reference so the id cannot be reused while the tape lives.
        self._watched[key] = (array, variable)
        return variable

    def _record(self, value, parents, vjps):
        variable = Variable(self, value, len(self._records))
        self._records.append(_Record(parents, vjps))
        return variable

    def backward(self, loss, wrt):
        """
        Accumulate the gradient of ``loss`` with respect to ``wrt``.

        The recorded primitives are visited in exact reverse execution order.

        :param Variable loss: A one-element value recorded on this tape.
        :param list wrt: ``Variable`` instances on this tape.

        :raises LossNotScalar: If ``loss`` has more than one element.
        :raises NodeNotOnTape: If ``loss`` or any of ``wrt`` belongs to
            another tape.

        :return: A ``list`` of gradient arrays aligned with ``wrt``; leaves
            ``loss`` does not depend on get zeros.
        """
        if not isinstance(loss, Variable) or loss.tape is not self:
            raise NodeNotOnTape("Loss was not recorded on this tape.")
        if loss.value.size != 1:
            raise LossNotScalar(
                "Loss must have one element, not shape %r" % (
                    loss.value.shape,))
        for variable in wrt:
            if not isinstance(variable, Variable) or variable.tape is not self:
                raise NodeNotOnTape("%r is not on this tape." % (variable,))

        adjoints = {loss.index: np.ones_like(loss.value)}
        for index in range(loss.index, -1, -1):
            adjoint = adjoints.get(index)
            if adjoint is None:
                continue
            record = self._records[index]
            for parent, vjp in zip(record.parents, record.vjps):
                if not isinstance(parent, Variable):
                    continue
                contribution = vjp(adjoint)
                if parent.index in adjoints:
                    adjoints[parent.index] = adjoints[parent.index] + \
                        contribution
                else:
                    adjoints[parent.index] = contribution
        return [adjoints.get(variable.index, np.zeros_like(variable.value))
                for variable in wrt]


def value_of(x):
    """
    :return: The plain array behind ``x``.
    """
    if isinstance(x, Variable):
        return x.value
    return np.asarray(x, dtype=np.float64)


def _tape_of(inputs):
    tape = None
    for x in inputs:
        if isinstance(x, Variable):
            if tape is None:
                tape = x.tape
            elif x.tape is not tape:
                raise NodeNotOnTape("Inputs were recorded on different tapes.")
    return tape


def _primitive(value, parents, vjps):
    """
    Return ``value`` as a ``Variable`` when any parent is on a tape, or as a
    plain array otherwise.
    """
    tape = _tape_of(parents)
    if tape is None:
        return value
    return tape._record(value, parents, vjps)


def _unbroadcast(gradient, shape):
    """
    Sum ``gradient`` down to ``shape``, undoing numpy broadcasting.
    """
    while gradient.ndim > len(shape):
        gradient = gradient.sum(axis=0)
    for axis, extent in enumerate(shape):
        if extent == 1 and gradient.shape[axis] != 1:
            gradient = gradient.sum(axis=axis, keepdims=True)
    return gradient


def add(a, b):
    av, bv = value_of(a), value_of(b)
    return _primitive(av + bv, (a, b), (
        lambda g: _unbroadcast(g, av.shape),
        lambda g: _unbroadcast(g, bv.shape)))


def sub(a, b):
    av, bv = value_of(a), value_of(b)
    return _primitive(av - bv, (a, b), (
        lambda g: _unbroadcast(g, av.shape),
        lambda g: _unbroadcast(-g, bv.shape)))


def mul(a, b):
    av, bv = value_of(a), value_of(b)
    return _primitive(av * bv, (a, b), (
        lambda g: _unbroadcast(g * bv, av.shape),
        lambda g: _unbroadcast(g * av, bv.shape)))


def div(a, b):
    av, bv = value_of(a), value_of(b)
    return _primitive(av / bv, (a, b), (
        lambda g: _unbroadcast(g / bv, av.shape),
        lambda g: _unbroadcast(-g * av / (bv * bv), bv.shape)))


def neg(a):
    return _primitive(-value_of(a), (a,), (lambda g: -g,))


def matmul(a, b):
    """
    Matrix product of a ``(n, k)`` and a ``(k, m)`` operand.
    """
    av, bv = value_of(a), value_of(b)
    if av.ndim != 2 or bv.ndim != 2 or av.shape[1] != bv.shape[0]:
        raise ShapeMismatch(
            "Cannot multiply shapes %r and %r" % (av.shape, bv.shape))
    return _primitive(av.dot(bv), (a, b), (
        lambda g: g.dot(bv.T),
        lambda g: av.T.dot(g)))


def tanh(a):
    out = np.tanh(value_of(a))
    return _primitive(out, (a,), (lambda g: g * (1.0 - out * out),))


def elu(a):
    """
    Exponential linear unit with unit scale.
    """
    av = value_of(a)
    negative = np.exp(np.minimum(av, 0.0))
    out = np.where(av > 0, av, negative - 1.0)
    return _primitive(out, (a,), (
        lambda g: g * np.where(av > 0, 1.0, negative),))


def exp(a):
    out = np.exp(value_of(a))
    return _primitive(out, (a,), (lambda g: g * out,))


def log(a):
    av = value_of(a)
    return _primitive(np.log(av), (a,), (lambda g: g / av,))


def square(a):
    av = value_of(a)
    return _primitive(av * av, (a,), (lambda g: 2.0 * g * av,))


def sum(a, axis=None):
    av = value_of(a)
    out = av.sum(axis=axis)

    def vjp(g):
        if axis is not None:
            g = np.expand_dims(g, axis)
        return np.broadcast_to(g, av.shape).copy()
    return _primitive(out, (a,), (vjp,))


def mean(a, axis=None):
    av = value_of(a)
    count = av.size if axis is None else av.shape[axis]
    return div(sum(a, axis=axis), float(count))


def reshape(a, shape):
    av = value_of(a)
    return _primitive(av.reshape(shape), (a,), (
        lambda g: g.reshape(av.shape),))


def repeat(a, repeats):
    """
    Repeat every row of a 2-d operand ``repeats`` times, in place (row ``r``
    becomes rows ``r * repeats`` to ``(r + 1) * repeats - 1``).
    """
    av = value_of(a)
    out = np.repeat(av, repeats, axis=0)
    return _primitive(out, (a,), (
        lambda g: g.reshape((av.shape[0], repeats) + av.shape[1:]).sum(
            axis=1),))


def concat(parts, axis=-1):
    values = [value_of(part) for part in parts]
    out = np.concatenate(values, axis=axis)
    bounds = np.cumsum([0] + [v.shape[axis] for v in values])

    def slicer(start, stop):
        def vjp(g):
            index = [slice(None)] * g.ndim
            index[axis] = slice(start, stop)
            return g[tuple(index)]
        return vjp
    return _primitive(out, tuple(parts), tuple(
        slicer(bounds[i], bounds[i + 1]) for i in range(len(values))))


def take(a, column):
    """
    Select one column of a 2-d operand, giving a 1-d result.
    """
    av = value_of(a)

    def vjp(g):
        gradient = np.zeros_like(av)
        gradient[:, column] = g
        return gradient
    return _primitive(av[:, column], (a,), (vjp,))
