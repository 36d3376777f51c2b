# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.synth.test.test_mechanism -*-

"""
Mechanism expressions and noise distributions of synthetic SCMs.

A mechanism is an arithmetic expression over the node's parents and its own
noise ``U``::

    2 * A + C + 0.5 * O + U
    U < sigmoid(C - 1)
    clip(1 + 1.3 * G + U - A * (G == 3), 0, 7)

Comparisons evaluate to 0 or 1.  The available functions are ``exp``,
``log``, ``tanh``, ``sigmoid``, ``abs``, ``round`` (half away from zero),
``clip(x, lo, hi)``, ``min(x, y)`` and ``max(x, y)``.

A noise distribution is one of ``normal(mu, sigma)``, ``uniform(lo, hi)``,
``bernoulli(p)``, ``categorical(p0, p1, ...)`` (values ``0 .. k``),
``discrete_uniform(lo, hi)`` (integers, both ends included) and ``none``.
"""

import ast
import operator

import numpy as np

from characteristic import attributes


__all__ = [
    "NOISE", "SynthError", "MalformedScm", "UnsupportedMechanism",
    "Mechanism", "parse_mechanism", "NoiseDistribution", "parse_noise",
]


# The name a mechanism uses for its node's own noise.
NOISE = u"U"


class SynthError(ValueError):
    """
    A synthetic SCM could not be built or queried.
    """


class MalformedScm(SynthError):
    """
    A mechanism, noise distribution or fixture document is invalid.
    """


class UnsupportedMechanism(SynthError):
    """
    An oracle method does not apply to the SCM's mechanisms or noise.
    """


def _round(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


_FUNCTIONS = {
    u"exp": (np.exp, 1),
    u"log": (np.log, 1),
    u"tanh": (np.tanh, 1),
    u"sigmoid": (_sigmoid, 1),
    u"abs": (np.abs, 1),
    u"round": (_round, 1),
    u"clip": (np.clip, 3),
    u"min": (np.minimum, 2),
    u"max": (np.maximum, 2),
}

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}

_UNARY = {
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}

_COMPARE = {
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
}


def _parse(text, what):
    try:
        return ast.parse(text.strip(), mode="eval").body
    except SyntaxError as e:
        raise MalformedScm("Cannot parse %s %r: %s" % (what, text, e.msg))


def _names(node):
    """
    Check ``node`` only uses whitelisted syntax and collect the variable
    names it reads.
    """
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(
                node.value, (int, float)):
            raise MalformedScm("Only numeric constants are allowed, not %r" % (
                node.value,))
        return set()
    if isinstance(node, ast.Name):
        if node.id in _FUNCTIONS:
            raise MalformedScm("Function %s must be called." % (node.id,))
        return {node.id}
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        return _names(node.left) | _names(node.right)
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _names(node.operand)
    if isinstance(node, ast.Compare) and all(
            type(op) in _COMPARE for op in node.ops):
        result = _names(node.left)
        for comparator in node.comparators:
            result |= _names(comparator)
        return result
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        if name not in _FUNCTIONS or node.keywords:
            raise MalformedScm("Unknown function %s" % (name,))
        if len(node.args) != _FUNCTIONS[name][1]:
            raise MalformedScm("%s takes %d arguments, not %d" % (
                name, _FUNCTIONS[name][1], len(node.args)))
        result = set()
        for arg in node.args:
            result |= _names(arg)
        return result
    raise MalformedScm("Unsupported syntax: %s" % (type(node).__name__,))


def _evaluate(node, env):
    if isinstance(node, ast.Constant):
        return float(node.value)
    if isinstance(node, ast.Name):
        return env[node.id]
    if isinstance(node, ast.BinOp):
        return _BINARY[type(node.op)](
            _evaluate(node.left, env), _evaluate(node.right, env))
    if isinstance(node, ast.UnaryOp):
        return _UNARY[type(node.op)](_evaluate(node.operand, env))
    if isinstance(node, ast.Compare):
        left = _evaluate(node.left, env)
        result = True
        for op, comparator in zip(node.ops, node.comparators):
            right = _evaluate(comparator, env)
            result = np.logical_and(result, _COMPARE[type(op)](left, right))
            left = right
        return np.asarray(result, dtype=np.float64)
    function = _FUNCTIONS[node.func.id][0]
    return function(*[_evaluate(arg, env) for arg in node.args])


def _affine(node):
    """
    :return: ``(intercept, {name: coefficient})`` of an affine expression.
    :raises UnsupportedMechanism: If the expression is not affine.
    """
    if isinstance(node, ast.Constant):
        return float(node.value), {}
    if isinstance(node, ast.Name):
        return 0.0, {node.id: 1.0}
    if isinstance(node, ast.UnaryOp):
        constant, terms = _affine(node.operand)
        sign = -1.0 if isinstance(node.op, ast.USub) else 1.0
        return sign * constant, dict(
            (name, sign * c) for name, c in terms.items())
    if isinstance(node, ast.BinOp):
        left, left_terms = _affine(node.left)
        right, right_terms = _affine(node.right)
        if isinstance(node.op, (ast.Add, ast.Sub)):
            sign = 1.0 if isinstance(node.op, ast.Add) else -1.0
            terms = dict(left_terms)
            for name, c in right_terms.items():
                terms[name] = terms.get(name, 0.0) + sign * c
            return left + sign * right, terms
        if isinstance(node.op, ast.Mult):
            if not left_terms:
                return left * right, dict(
                    (name, left * c) for name, c in right_terms.items())
            if not right_terms:
                return left * right, dict(
                    (name, right * c) for name, c in left_terms.items())
        if isinstance(node.op, ast.Div) and not right_terms and right != 0:
            return left / right, dict(
                (name, c / right) for name, c in left_terms.items())
        if isinstance(node.op, ast.Pow) and not left_terms and not right_terms:
            return left ** right, {}
    raise UnsupportedMechanism("Expression is not affine: %s" % (
        ast.dump(node),))


@attributes(["text", "tree", "names"])
class Mechanism(object):
    """
    A parsed mechanism expression.

    :ivar unicode text: The source text.
    :ivar tree: The checked expression tree.
    :ivar frozenset names: Variable names the expression reads.
    """

    def evaluate(self, env, n):
        """
        :param dict env: Name to ``(n,)`` array of values.
        :param int n: Number of rows.
        :return: ``(n,)`` float64 values.
        """
        value = np.asarray(_evaluate(self.tree, env), dtype=np.float64)
        return np.broadcast_to(value, (n,)).copy()

    def affine(self):
        """
        :raises UnsupportedMechanism: If the expression is not affine in its
            variables.
        :return: ``(intercept, {name: coefficient})``.
        """
        constant, terms = _affine(self.tree)
        return constant, dict(
            (name, c) for name, c in terms.items() if c != 0.0)


def parse_mechanism(text, allowed):
    """
    :param unicode text: The expression.
    :param allowed: Variable names the expression may read.

    :raises MalformedScm: If the expression uses unsupported syntax or reads
        a name outside ``allowed``.

    :return: A ``Mechanism``.
    """
    tree = _parse(str(text), u"mechanism")
    names = _names(tree)
    unknown = names - set(allowed)
    if unknown:
        raise MalformedScm("Mechanism %r reads %s, which are neither parents "
                           "nor the noise %s" % (
                               text, u", ".join(sorted(unknown)), NOISE))
    return Mechanism(text=str(text), tree=tree, names=frozenset(names))


_ARITY = {
    u"normal": 2, u"uniform": 2, u"bernoulli": 1, u"categorical": None,
    u"discrete_uniform": 2, u"none": 0,
}


@attributes(["name", "params"])
class NoiseDistribution(object):
    """
    :ivar unicode name: The distribution family.
    :ivar tuple params: Its parameters.
    """
    def __init__(self):
        self.params = tuple(float(p) for p in self.params)
        name, params = self.name, self.params
        if name not in _ARITY:
            raise MalformedScm("Unknown noise distribution %r" % (name,))
        arity = _ARITY[name]
        if arity is not None and len(params) != arity:
            raise MalformedScm("%s takes %d parameters, not %d" % (
                name, arity, len(params)))
        if name == u"normal" and not params[1] > 0:
            raise MalformedScm("normal needs a positive sigma.")
        if name in (u"uniform", u"discrete_uniform") and \
                not params[0] <= params[1]:
            raise MalformedScm("%s needs lo <= hi." % (name,))
        if name == u"discrete_uniform" and \
                any(p != np.floor(p) for p in params):
            raise MalformedScm("discrete_uniform needs integer bounds.")
        if name == u"bernoulli" and not 0 <= params[0] <= 1:
            raise MalformedScm("bernoulli needs 0 <= p <= 1.")
        if name == u"categorical":
            if not params or min(params) < 0 or \
                    abs(sum(params) - 1.0) > 1e-9:
                raise MalformedScm(
                    "categorical needs non-negative probabilities summing "
                    "to 1.")

    @property
    def variance(self):
        """
        The variance of a Gaussian (or absent) noise.
        """
        if self.name == u"none":
            return 0.0
        if self.name == u"normal":
            return self.params[1] ** 2
        raise UnsupportedMechanism("%s noise is not Gaussian." % (self.name,))

    def support(self):
        """
        :raises UnsupportedMechanism: For a continuous distribution.
        :return: ``(values, probabilities)`` arrays of a discrete
            distribution.
        """
        name, params = self.name, self.params
        if name == u"none":
            return np.zeros(1), np.ones(1)
        if name == u"bernoulli":
            return np.array([0.0, 1.0]), np.array([1.0 - params[0], params[0]])
        if name == u"categorical":
            return np.arange(len(params), dtype=np.float64), np.array(params)
        if name == u"discrete_uniform":
            values = np.arange(params[0], params[1] + 1)
            return values, np.full(values.shape, 1.0 / values.shape[0])
        raise UnsupportedMechanism("%s noise is continuous." % (name,))

    def sample(self, rng, n):
        """
        :param numpy.random.Generator rng: Randomness.
        :return: ``(n,)`` draws.
        """
        name, params = self.name, self.params
        if name == u"normal":
            return rng.normal(params[0], params[1], size=n)
        if name == u"uniform":
            return rng.uniform(params[0], params[1], size=n)
        if name == u"none":
            return np.zeros(n)
        values, probabilities = self.support()
        return rng.choice(values, size=n, p=probabilities)


def parse_noise(text):
    """
    :param unicode text: E.g. ``normal(0, 1)`` or ``none``.

    :raises MalformedScm: If ``text`` is not a known distribution with
        numeric parameters.

    :return: A ``NoiseDistribution``.
    """
    tree = _parse(str(text), u"noise distribution")
    if isinstance(tree, ast.Name):
        return NoiseDistribution(name=tree.id, params=())
    if not isinstance(tree, ast.Call) or not isinstance(tree.func, ast.Name):
        raise MalformedScm("Noise must look like name(params), not %r" % (
            text,))
    params = []
    for arg in tree.args:
        if _names(arg):
            raise MalformedScm("Noise parameters must be numbers: %r" % (
                text,))
        params.append(float(_evaluate(arg, {})))
    return NoiseDistribution(name=tree.func.id, params=params)
