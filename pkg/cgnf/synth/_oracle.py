# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.synth.test.test_oracle -*-

"""
Ground-truth causal effects of synthetic SCMs, computed by intervening in
the true mechanisms.
"""

from collections import OrderedDict

import numpy as np

from characteristic import attributes
from eliot import Logger

from ..causal import (
    CUT, EffectEstimate, PotentialOutcomes, individual_effects,
    ace_from_outcomes, cace_from_outcomes,
)
from ..graph import descendants, has_directed_path
from ._mechanism import UnsupportedMechanism
from ._scm import sample_noise, propagate, linear_system
from ._logging import ORACLE


__all__ = [
    "OracleMethod", "OracleEffects", "MONTE_CARLO_DRAWS", "MAX_SUPPORT",
    "MAX_STATES", "oracle_potential_outcomes", "oracle_effects",
]


_logger = Logger()

MONTE_CARLO_DRAWS = 10 ** 6

# Enumeration applies when every noise has at most MAX_SUPPORT values and the
# joint noise has at most MAX_STATES states.
MAX_SUPPORT = 20
MAX_STATES = 10 ** 6


class OracleMethod(object):
    """
    How ground-truth effects are computed.
    """
    CLOSED_FORM = u"closed_form"
    ENUMERATION = u"enumeration"
    MONTE_CARLO = u"monte_carlo"

    ALL = (CLOSED_FORM, ENUMERATION, MONTE_CARLO)


@attributes(["ace", "cace", "method", "n_draws", "seed"],
            defaults=dict(seed=None))
class OracleEffects(object):
    """
    Ground-truth effects of an SCM.

    :ivar EffectEstimate ace: The average causal effect; its standard error
        is zero unless ``method`` is Monte-Carlo.
    :ivar cace: ``OrderedDict`` of group label to ``EffectEstimate``, or
        ``None`` when the SCM has no group key.
    :ivar unicode method: An ``OracleMethod``.
    :ivar int n_draws: Noise draws or enumerated noise states; 0 for the
        closed form.
    :ivar int seed: Seed of the Monte-Carlo draws, if any.
    """


def oracle_potential_outcomes(scm, noise, a1, a0, seed=None):
    """
    The true potential outcomes of units with known noise.

    :param SyntheticScm scm: The SCM.
    :param noise: ``(n, d)`` noise of the units.
    :param a1: Treatment value of the first world.
    :param a0: Treatment value of the second world.
    :param int seed: The seed ``noise`` was drawn with, if any.

    :return: A ``PotentialOutcomes`` with the units' factual treatment,
        outcome and group labels.
    """
    treatment, outcome = scm.treatment, scm.outcome
    a_index, y_index = scm.dag.index(treatment), scm.dag.index(outcome)
    factual = propagate(scm, noise)
    y1 = propagate(scm, noise, {treatment: a1})[:, y_index]
    y0 = propagate(scm, noise, {treatment: a0})[:, y_index]
    groups = None
    if scm.group_key is not None:
        column = factual[:, scm.dag.index(scm.group_key)]
        groups = [str(int(value)) for value in column]
    y_spec = scm.specs[y_index]
    return PotentialOutcomes(
        y1=y1, y0=y0, a1=a1, a0=a0,
        observed_treatment=factual[:, a_index],
        observed_outcome=factual[:, y_index],
        groups=groups,
        cardinality=y_spec.cardinality if y_spec.discrete else None,
        seed=seed)


def _closed_form(scm, a1, a0, thresholded):
    treatment, outcome = scm.treatment, scm.outcome
    if outcome not in descendants(scm.dag, treatment):
        effect = 0.0
    else:
        if thresholded:
            raise UnsupportedMechanism(
                "Thresholded effects have no closed form.")
        on_path = [node for node in descendants(scm.dag, treatment)
                   if node == outcome or
                   has_directed_path(scm.dag, node, outcome)]
        _, weights, _ = linear_system(scm, on_path)
        total = np.linalg.inv(np.eye(scm.dag.dimension) - weights)
        effect = total[scm.dag.index(outcome), scm.dag.index(treatment)] * (
            float(a1) - float(a0))
    estimate = EffectEstimate(estimate=effect, std_error=0.0, n_units=0,
                              n_noise_draws=0)
    cace = None
    if scm.group_key is not None:
        levels = scm.specs[scm.dag.index(scm.group_key)].cardinality
        cace = OrderedDict(
            (label, estimate) for label in
            sorted(str(level) for level in range(levels)))
    return OracleEffects(ace=estimate, cace=cace,
                         method=OracleMethod.CLOSED_FORM, n_draws=0)


def _noise_states(scm):
    """
    :return: ``(states, weights)``: every joint noise value with positive
        probability, ``(m, d)``, and its probability, ``(m,)``.
    """
    values, probabilities = [], []
    for node in scm.dag.nodes:
        support, weights = scm.noises[node].support()
        if support.shape[0] > MAX_SUPPORT:
            raise UnsupportedMechanism(
                "Noise of %s has %d values, more than %d." % (
                    node, support.shape[0], MAX_SUPPORT))
        keep = weights > 0
        values.append(support[keep])
        probabilities.append(weights[keep])
    count = np.prod([v.shape[0] for v in values], dtype=np.float64)
    if count > MAX_STATES:
        raise UnsupportedMechanism("%d joint noise states, more than %d." % (
            count, MAX_STATES))
    states = np.stack([grid.ravel() for grid in
                       np.meshgrid(*values, indexing="ij")], axis=1)
    weights = np.prod(np.stack([grid.ravel() for grid in
                                np.meshgrid(*probabilities, indexing="ij")],
                               axis=1), axis=1)
    return states, weights


def _weighted(effects, weights):
    return EffectEstimate(
        estimate=np.sum(weights * effects) / np.sum(weights), std_error=0.0,
        n_units=effects.shape[0], n_noise_draws=effects.shape[0])


def _enumeration(scm, a1, a0, thresholded, cut):
    states, weights = _noise_states(scm)
    outcomes = oracle_potential_outcomes(scm, states, a1, a0)
    effects = individual_effects(outcomes, thresholded, cut)
    cace = None
    if outcomes.groups is not None:
        cace = OrderedDict()
        for group in sorted(set(outcomes.groups.tolist())):
            members = outcomes.groups == group
            cace[group] = _weighted(effects[members], weights[members])
    return OracleEffects(ace=_weighted(effects, weights), cace=cace,
                         method=OracleMethod.ENUMERATION,
                         n_draws=states.shape[0])


def _monte_carlo(scm, a1, a0, thresholded, cut, draws, seed):
    outcomes = oracle_potential_outcomes(
        scm, sample_noise(scm, draws, seed), a1, a0, seed)
    cace = None
    if outcomes.groups is not None:
        cace = cace_from_outcomes(outcomes, thresholded, cut)
    return OracleEffects(
        ace=ace_from_outcomes(outcomes, thresholded, cut), cace=cace,
        method=OracleMethod.MONTE_CARLO, n_draws=draws, seed=seed)


def oracle_effects(scm, a1, a0, method=None, thresholded=False, cut=CUT,
                   draws=MONTE_CARLO_DRAWS, seed=0, logger=_logger):
    """
    The true ACE and per-group CACE of ``do(A = a1)`` against
    ``do(A = a0)``.

    Without an explicit ``method`` the closed form is used for an outcome
    that depends linearly on the treatment through continuous nodes, else
    enumeration when all noise is discrete and small, else Monte-Carlo.

    :param SyntheticScm scm: The SCM; its DAG names the treatment and the
        outcome.
    :param unicode method: Force an ``OracleMethod``.
    :param bool thresholded: Compute effects on ``outcome > cut``.
    :param int draws: Monte-Carlo draws.
    :param int seed: Seed of the Monte-Carlo draws.

    :raises UnsupportedMechanism: If the forced method does not apply.

    :return: ``OracleEffects``.
    """
    if method is not None and method not in OracleMethod.ALL:
        raise UnsupportedMechanism("Unknown oracle method %r" % (method,))
    result = None
    if method in (None, OracleMethod.CLOSED_FORM):
        try:
            result = _closed_form(scm, a1, a0, thresholded)
        except UnsupportedMechanism:
            if method is not None:
                raise
    if result is None and method in (None, OracleMethod.ENUMERATION):
        try:
            result = _enumeration(scm, a1, a0, thresholded, cut)
        except UnsupportedMechanism:
            if method is not None:
                raise
    if result is None:
        result = _monte_carlo(scm, a1, a0, thresholded, cut, draws, seed)
    ORACLE(method=result.method, ace=result.ace.estimate,
           n_draws=result.n_draws).write(logger)
    return result
