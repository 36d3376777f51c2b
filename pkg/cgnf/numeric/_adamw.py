# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.numeric.test.test_adamw -*-

"""
The AdamW update rule: Adam moments with decoupled weight decay.
"""

import numpy as np

from characteristic import attributes

from ._tape import ShapeMismatch, NonFiniteGradient


@attributes(["learning_rate", "beta1", "beta2", "epsilon", "weight_decay",
             "step", "first_moments", "second_moments"],
            defaults=dict(learning_rate=3e-4, beta1=0.9, beta2=0.999,
                          epsilon=1e-8, weight_decay=1e-2, step=0,
                          first_moments=None, second_moments=None))
class AdamWState(object):
    """
    Optimizer state.

    :ivar float learning_rate: Step size.
    :ivar float beta1: Decay of the first moment estimate.
    :ivar float beta2: Decay of the second moment estimate.
    :ivar float epsilon: Added to the root of the second moment.
    :ivar float weight_decay: Decoupled decay coefficient.
    :ivar int step: Number of updates applied so far.
    :ivar list first_moments: One array per parameter, or ``None`` before
        the first step.
    :ivar list second_moments: Likewise.
    """


def adamw_step(state, params, grads):
    """
    Apply one AdamW update.

    ``p' = p - lr * m_hat / (sqrt(v_hat) + eps) - lr * wd * p``

    :param AdamWState state: The state before the step.
    :param list params: Parameter arrays.
    :param list grads: Gradient arrays aligned with ``params``.

    :raises ShapeMismatch: If the arrays do not line up.
    :raises NonFiniteGradient: If a gradient is not finite.

    :return: ``(new_params, new_state)``; the inputs are not modified.
    """
    if len(params) != len(grads):
        raise ShapeMismatch("%d parameters but %d gradients" % (
            len(params), len(grads)))
    first = state.first_moments
    second = state.second_moments
    if first is None:
        first = [np.zeros_like(p) for p in params]
        second = [np.zeros_like(p) for p in params]
    if len(first) != len(params):
        raise ShapeMismatch("Optimizer state tracks %d parameters, got %d" % (
            len(first), len(params)))
    for p, g, m in zip(params, grads, first):
        if p.shape != g.shape or p.shape != m.shape:
            raise ShapeMismatch("Parameter %r, gradient %r, moment %r" % (
                p.shape, g.shape, m.shape))
        if not np.all(np.isfinite(g)):
            raise NonFiniteGradient("Gradient is not finite.")

    step = state.step + 1
    lr = state.learning_rate
    correction1 = 1.0 - state.beta1 ** step
    correction2 = 1.0 - state.beta2 ** step
    new_params, new_first, new_second = [], [], []
    for p, g, m, v in zip(params, grads, first, second):
        m = state.beta1 * m + (1.0 - state.beta1) * g
        v = state.beta2 * v + (1.0 - state.beta2) * g * g
        update = (m / correction1) / (np.sqrt(v / correction2) +
                                      state.epsilon)
        new_params.append(p - lr * update - lr * state.weight_decay * p)
        new_first.append(m)
        new_second.append(v)
    return new_params, AdamWState(
        learning_rate=lr, beta1=state.beta1, beta2=state.beta2,
        epsilon=state.epsilon, weight_decay=state.weight_decay, step=step,
        first_moments=new_first, second_moments=new_second)


class AdamW(object):
    """
    Stateful convenience wrapper around ``adamw_step``.

    :ivar AdamWState state: The state after the most recent step.
    """
    def __init__(self, **hyperparameters):
        """
        :param hyperparameters: ``AdamWState`` fields such as
            ``learning_rate`` and ``weight_decay``.
        """
        self.state = AdamWState(**hyperparameters)

    def step(self, params, grads):
        """
        :return: The updated parameter arrays.
        """
        params, self.state = adamw_step(self.state, params, grads)
        return params
