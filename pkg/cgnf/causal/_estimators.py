# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.causal.test.test_estimators -*-

"""
Counterfactual queries on a trained flow: abduction of a unit's noise,
prediction under an intervention on the treatment, and the individual,
average and group-conditional causal effects built on them.

Every effect is computed from a ``PotentialOutcomes`` record, so the same
estimators serve a trained flow and a synthetic SCM with known mechanisms.
"""

from collections import OrderedDict

import numpy as np

from characteristic import attributes
from eliot import Logger

from ..flow import transform, inverse, mutilated, sample
from ..graph import NodeRole, role_node
from ..train import dequantize_units, quantize
from ._logging import ESTIMATE_ACTION, EFFECT_ESTIMATED


__all__ = [
    "CUT", "CausalQueryError", "EmptyUnits", "MissingGroupKey",
    "MissingObservedTreatment", "EffectEstimate", "PotentialOutcomes",
    "abduct", "predict_under", "counterfactual_outcome", "potential_outcomes",
    "individual_effects", "ace_from_outcomes", "cace_from_outcomes",
    "estimate_ice", "estimate_ace", "estimate_cace",
    "estimate_interventional_ace",
]


_logger = Logger()

# An outcome above this degree counts as poor in the thresholded effects.
CUT = 1


class CausalQueryError(ValueError):
    """
    A causal query cannot be answered.
    """


class EmptyUnits(CausalQueryError):
    """
    The query is over no units.
    """


class MissingGroupKey(CausalQueryError):
    """
    A group-conditional query was made on units without group labels.
    """


class MissingObservedTreatment(CausalQueryError):
    """
    The query needs the units' observed treatment but it is not known.
    """


@attributes(["estimate", "std_error", "n_units", "n_noise_draws", "seed"],
            defaults=dict(seed=None))
class EffectEstimate(object):
    """
    An estimated causal effect.

    :ivar float estimate: The effect.
    :ivar float std_error: Standard error of ``estimate``; ``nan`` when it
        cannot be computed from fewer than two units.
    :ivar int n_units: Units averaged over.
    :ivar int n_noise_draws: Noise vectors used (one per unit when the noise
        is abducted).
    :ivar int seed: Seed of the dequantization or base noise, if any.
    """
    def __init__(self):
        self.estimate = float(self.estimate)
        self.std_error = float(self.std_error)
        if not np.isfinite(self.estimate):
            raise CausalQueryError("Effect estimate %r is not finite." % (
                self.estimate,))
        if self.std_error < 0:
            raise CausalQueryError("Standard error %r is negative." % (
                self.std_error,))


@attributes(["y1", "y0", "a1", "a0", "observed_treatment",
             "observed_outcome", "groups", "cardinality", "seed"],
            defaults=dict(observed_treatment=None, observed_outcome=None,
                          groups=None, cardinality=None, seed=None))
class PotentialOutcomes(object):
    """
    Each unit's outcome under two values of the treatment.

    :ivar numpy.ndarray y1: ``(n,)`` outcomes under ``A = a1``.
    :ivar numpy.ndarray y0: ``(n,)`` outcomes under ``A = a0``.
    :ivar float a1: The treatment value of ``y1``; what encouraging means.
    :ivar float a0: The treatment value of ``y0``; what discouraging means.
    :ivar numpy.ndarray observed_treatment: ``(n,)`` treatment each unit
        actually received, or ``None``.
    :ivar numpy.ndarray observed_outcome: ``(n,)`` outcome each unit actually
        showed, or ``None``.
    :ivar numpy.ndarray groups: ``(n,)`` group labels, or ``None``.
    :ivar int cardinality: Number of outcome levels when the outcome is
        discrete, else ``None``.
    :ivar int seed: Seed the outcomes were computed with, if any.
    """
    def __init__(self):
        self.y1 = np.asarray(self.y1, dtype=np.float64)
        self.y0 = np.asarray(self.y0, dtype=np.float64)
        shape = self.y1.shape
        if len(shape) != 1 or self.y0.shape != shape:
            raise CausalQueryError(
                "Potential outcomes must be two equal-length vectors, "
                "got %r and %r" % (self.y1.shape, self.y0.shape))
        for name in ("observed_treatment", "observed_outcome"):
            value = getattr(self, name)
            if value is not None:
                value = np.asarray(value, dtype=np.float64)
                if value.shape != shape:
                    raise CausalQueryError("%s must have shape %r" % (
                        name, shape))
                setattr(self, name, value)
        if self.groups is not None:
            self.groups = np.asarray(self.groups, dtype=str)
            if self.groups.shape != shape:
                raise CausalQueryError("Expected one group label per unit.")

    @property
    def size(self):
        return self.y1.shape[0]

    def subset(self, rows):
        """
        :return: The potential outcomes of ``rows`` only.
        """
        def pick(value):
            return None if value is None else value[rows]
        return PotentialOutcomes(
            y1=self.y1[rows], y0=self.y0[rows], a1=self.a1, a0=self.a0,
            observed_treatment=pick(self.observed_treatment),
            observed_outcome=pick(self.observed_outcome),
            groups=pick(self.groups), cardinality=self.cardinality,
            seed=self.seed)


def _roles(trained):
    dag = trained.dag
    a_index = dag.index(role_node(dag, NodeRole.TREATMENT))
    y_index = dag.index(role_node(dag, NodeRole.OUTCOME))
    return (a_index, trained.specs[a_index],
            y_index, trained.specs[y_index])


def _read_outcome(spec, values):
    if spec.discrete:
        return quantize(values, spec.cardinality).astype(np.float64)
    return values


def abduct(trained, x):
    """
    Recover the noise of observed units.

    :param TrainedModel trained: The model.
    :param x: Units in the model's (dequantized) variable space, ``(d,)`` or
        ``(n, d)``.

    :raises NonFiniteInput: If ``x`` is not finite.

    :return: ``z = T(x)`` with the shape of ``x``.
    """
    z, _ = transform(trained.model, x)
    return z


def predict_under(trained, z, treatment_value):
    """
    Propagate noise through the model with the treatment clamped and its
    incoming edges removed.

    :param TrainedModel trained: The model; its DAG names the treatment.
    :param z: Noise, ``(d,)`` or ``(n, d)``.
    :param treatment_value: The clamp, a scalar or a ``(n,)`` array.

    :return: The potential units with the shape of ``z``.
    """
    treatment = role_node(trained.dag, NodeRole.TREATMENT)
    return inverse(mutilated(trained.model, treatment), z,
                   {treatment: treatment_value})


def _clamp(treatment_spec, x, a):
    """
    The treatment clamp ``a`` for dequantized units ``x``, carrying over each
    unit's own dequantization residual on a discrete treatment.
    """
    if treatment_spec.discrete:
        residual = x - np.sign(x) * np.floor(np.abs(x) + 0.5)
        return a + residual
    return np.full(x.shape, float(a))


def _outcome_under(trained, units, z, a):
    a_index, a_spec, y_index, y_spec = _roles(trained)
    potential = predict_under(trained, z, _clamp(a_spec, units[:, a_index], a))
    return _read_outcome(y_spec, potential[:, y_index])


def counterfactual_outcome(trained, x, a):
    """
    Abduct ``x``'s noise, clamp the treatment to ``a`` and read
    off the outcome.

    :param TrainedModel trained: The model.
    :param x: Dequantized units, ``(d,)`` or ``(n, d)``.
    :param a: Treatment value.

    :return: The outcome (quantized for a discrete outcome), a ``float`` for
        a single unit or a ``(n,)`` array.
    """
    x = np.asarray(x, dtype=np.float64)
    units = np.atleast_2d(x)
    y = _outcome_under(trained, units, abduct(trained, units), a)
    if x.ndim == 1:
        return float(y[0])
    return y


def potential_outcomes(trained, data, a1, a0, seed):
    """
    Compute every unit's outcome under ``A = a1`` and under ``A = a0``.

    Discrete columns are dequantized with truncated noise drawn from
    ``seed`` before abduction, so quantizing a unit's outcome at its observed
    treatment gives back its observed outcome.

    :param TrainedModel trained: The model.
    :param Dataset data: The observed units.
    :param a1: Treatment value of the first world.
    :param a0: Treatment value of the second world.
    :param int seed: Seed of the dequantization noise.

    :raises EmptyUnits: If ``data`` holds no units.

    :return: A ``PotentialOutcomes``.
    """
    if data.size == 0:
        raise EmptyUnits("No units to compute potential outcomes for.")
    a_index, _, y_index, y_spec = _roles(trained)
    x = dequantize_units(trained.specs, data.values, seed, truncate=True)
    z = abduct(trained, x)
    y1 = _outcome_under(trained, x, z, a1)
    y0 = _outcome_under(trained, x, z, a0)
    return PotentialOutcomes(
        y1=y1, y0=y0, a1=a1, a0=a0,
        observed_treatment=data.values[:, a_index],
        observed_outcome=data.values[:, y_index],
        groups=data.groups,
        cardinality=y_spec.cardinality if y_spec.discrete else None,
        seed=seed)


def individual_effects(outcomes, thresholded=False, cut=CUT):
    """
    :param PotentialOutcomes outcomes: The potential outcomes.
    :param bool thresholded: Compare ``outcome > cut`` indicators instead of
        the outcomes themselves.

    :return: ``(n,)`` array of ``y(a1) - y(a0)`` per unit.
    """
    if thresholded:
        return ((outcomes.y1 > cut).astype(np.float64) -
                (outcomes.y0 > cut).astype(np.float64))
    return outcomes.y1 - outcomes.y0


def _mean_estimate(effects, seed):
    n = effects.shape[0]
    if n > 1:
        std_error = np.std(effects, ddof=1) / np.sqrt(n)
    else:
        std_error = np.nan
    return EffectEstimate(estimate=np.mean(effects), std_error=std_error,
                          n_units=n, n_noise_draws=n, seed=seed)


def ace_from_outcomes(outcomes, thresholded=False, cut=CUT):
    """
    The unit average of the individual effects, with the standard error of
    the mean.

    :raises EmptyUnits: If there are no units.

    :return: An ``EffectEstimate``.
    """
    if outcomes.size == 0:
        raise EmptyUnits("Cannot average over no units.")
    return _mean_estimate(
        individual_effects(outcomes, thresholded, cut), outcomes.seed)


def cace_from_outcomes(outcomes, thresholded=False, cut=CUT):
    """
    The average individual effect within each group.  Groups without units
    do not appear; groups with a single unit have a ``nan`` standard error.

    :raises MissingGroupKey: If the units carry no group labels.

    :return: ``OrderedDict`` of group label to ``EffectEstimate``, in label
        order.
    """
    if outcomes.groups is None:
        raise MissingGroupKey("Units have no group key.")
    effects = individual_effects(outcomes, thresholded, cut)
    result = OrderedDict()
    for group in sorted(set(outcomes.groups.tolist())):
        result[group] = _mean_estimate(
            effects[outcomes.groups == group], outcomes.seed)
    return result


def estimate_ice(trained, x, a1, a0, seed, thresholded=False, cut=CUT,
                 logger=_logger):
    """
    The individual effect of one observed unit.

    :param TrainedModel trained: The model.
    :param x: The observed unit, ``(d,)``, discrete columns holding their
        integer codes.
    :param int seed: Seed of the unit's dequantization noise.
        A dataset dequantized with the same seed gives its rows other noise,
        so for a unit of a dataset take its entry of ``potential_outcomes``
        instead.

    :return: An ``EffectEstimate`` with a zero standard error; the effect is
        deterministic given the model and the unit.
    """
    with ESTIMATE_ACTION(logger, kind=u"ice", n_units=1):
        x = dequantize_units(
            trained.specs, np.atleast_2d(np.asarray(x, dtype=np.float64)),
            seed, truncate=True)
        z = abduct(trained, x)
        y1 = _outcome_under(trained, x, z, a1)
        y0 = _outcome_under(trained, x, z, a0)
        effect = individual_effects(
            PotentialOutcomes(y1=y1, y0=y0, a1=a1, a0=a0), thresholded, cut)
        result = EffectEstimate(estimate=effect[0], std_error=0.0, n_units=1,
                                n_noise_draws=1, seed=seed)
        EFFECT_ESTIMATED(kind=u"ice", estimate=result.estimate).write(logger)
    return result


def estimate_ace(trained, data, a1, a0, seed, thresholded=False, cut=CUT,
                 logger=_logger):
    """
    The average causal effect over the units of ``data``, using one abducted
    noise vector per unit.

    :raises EmptyUnits: If ``data`` holds no units.

    :return: An ``EffectEstimate``.
    """
    if data.size == 0:
        raise EmptyUnits("Cannot estimate an average effect of no units.")
    with ESTIMATE_ACTION(logger, kind=u"ace", n_units=data.size):
        outcomes = potential_outcomes(trained, data, a1, a0, seed)
        result = ace_from_outcomes(outcomes, thresholded, cut)
        EFFECT_ESTIMATED(kind=u"ace", estimate=result.estimate).write(logger)
    return result


def estimate_cace(trained, data, a1, a0, seed, thresholded=False, cut=CUT,
                  logger=_logger):
    """
    The average causal effect within each group of ``data``.

    :raises MissingGroupKey: If ``data`` has no group key.
    :raises EmptyUnits: If ``data`` holds no units.

    :return: ``OrderedDict`` of group label to ``EffectEstimate``.
    """
    if data.groups is None:
        raise MissingGroupKey("Dataset has no group-key column.")
    if data.size == 0:
        raise EmptyUnits("Cannot estimate group effects of no units.")
    with ESTIMATE_ACTION(logger, kind=u"cace", n_units=data.size):
        outcomes = potential_outcomes(trained, data, a1, a0, seed)
        result = cace_from_outcomes(outcomes, thresholded, cut)
    return result


def estimate_interventional_ace(trained, a1, a0, n, seed, thresholded=False,
                                cut=CUT, logger=_logger):
    """
    The average causal effect from fresh base-noise draws rather than
    abducted noise: sample ``n`` noise vectors and push each through the
    model under both clamps.

    :param int n: Number of noise draws, at least 1.
    :param int seed: Seed of the base noise.

    :return: An ``EffectEstimate``.
    """
    if n < 1:
        raise EmptyUnits("Need at least one noise draw, not %r." % (n,))
    _, _, y_index, y_spec = _roles(trained)
    treatment = role_node(trained.dag, NodeRole.TREATMENT)
    model = mutilated(trained.model, treatment)
    with ESTIMATE_ACTION(logger, kind=u"interventional_ace", n_units=n):
        y1 = _read_outcome(
            y_spec, sample(model, n, seed, {treatment: a1})[:, y_index])
        y0 = _read_outcome(
            y_spec, sample(model, n, seed, {treatment: a0})[:, y_index])
        result = ace_from_outcomes(
            PotentialOutcomes(y1=y1, y0=y0, a1=a1, a0=a0, seed=seed),
            thresholded, cut)
        EFFECT_ESTIMATED(kind=u"interventional_ace",
                         estimate=result.estimate).write(logger)
    return result
