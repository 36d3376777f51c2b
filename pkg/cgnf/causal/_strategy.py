# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.causal.test.test_strategy -*-

"""
Treatment strategies: rules deciding, globally, per group or per unit,
whether to encourage the treatment, discourage it or leave units as they
were observed.
"""

from collections import OrderedDict

import numpy as np

from characteristic import attributes
from eliot import Logger

from ._estimators import (
    CUT, CausalQueryError, MissingGroupKey, MissingObservedTreatment,
    EmptyUnits, individual_effects, potential_outcomes,
)
from ._logging import ESTIMATE_ACTION, STRATEGY_ASSIGNED


__all__ = [
    "StrategyKind", "Decision", "DEFAULT_EPSILON", "TreatmentStrategy",
    "Assignment", "Advisability", "StrategyEvaluation",
    "assign_from_outcomes", "assign_strategy", "evaluate_strategy",
    "strategy_worlds",
]


_logger = Logger()

DEFAULT_EPSILON = 0.05


class StrategyKind(object):
    """
    The six treatment strategies.

    ``TS0`` and ``TS1`` discourage or encourage everyone; ``TSOb`` keeps the
    observed treatment; ``TSC`` decides per group from the group average
    effect; ``TSI`` decides per unit from the individual effect and ``TSIt``
    from the individual effect on the thresholded outcome.
    """
    TS0 = u"TS0"
    TS1 = u"TS1"
    TSOb = u"TSOb"
    TSC = u"TSC"
    TSI = u"TSI"
    TSIt = u"TSIt"

    ALL = (TS0, TS1, TSOb, TSC, TSI, TSIt)


class Decision(object):
    """
    Per-unit decisions of a strategy.
    """
    ENCOURAGE = u"encourage"
    DISCOURAGE = u"discourage"
    NEUTRAL = u"neutral"

    ALL = (ENCOURAGE, DISCOURAGE, NEUTRAL)


@attributes(["kind", "epsilon", "lower_is_better", "cut"],
            defaults=dict(epsilon=DEFAULT_EPSILON, lower_is_better=True,
                          cut=CUT))
class TreatmentStrategy(object):
    """
    :ivar unicode kind: A ``StrategyKind``.
    :ivar float epsilon: Effects of magnitude at most ``epsilon`` are
        neutral.
    :ivar bool lower_is_better: Whether a lower outcome is the desirable
        one, as for a poverty degree.
    :ivar int cut: Outcomes above ``cut`` count as bad for ``TSIt``.
    """
    def __init__(self):
        if self.kind not in StrategyKind.ALL:
            raise CausalQueryError("Unknown treatment strategy %r" % (
                self.kind,))
        if not self.epsilon >= 0:
            raise CausalQueryError(
                "Neutrality threshold must be non-negative, not %r" % (
                    self.epsilon,))


@attributes(["encouraged", "discouraged", "neutral"])
class Advisability(object):
    """
    Percentages of units a strategy encourages, discourages and leaves
    neutral.
    """

    def as_dict(self):
        return OrderedDict([(Decision.ENCOURAGE, self.encouraged),
                            (Decision.DISCOURAGE, self.discouraged),
                            (Decision.NEUTRAL, self.neutral)])


@attributes(["kind", "decisions", "resolved"])
class Assignment(object):
    """
    The decisions of a strategy for every unit.

    :ivar unicode kind: The ``StrategyKind`` that decided.
    :ivar numpy.ndarray decisions: ``(n,)`` ``Decision`` values.
    :ivar numpy.ndarray resolved: ``(n,)`` treatment each unit is evaluated
        under; neutral units keep their observed treatment.
    """
    def __init__(self):
        self.decisions = np.asarray(self.decisions, dtype=object)
        self.resolved = np.asarray(self.resolved, dtype=np.float64)

    @property
    def size(self):
        return self.decisions.shape[0]

    def advisability(self):
        """
        :return: An ``Advisability`` summarizing the decisions.
        """
        if self.size == 0:
            return Advisability(encouraged=0.0, discouraged=0.0, neutral=0.0)
        shares = [100.0 * np.count_nonzero(self.decisions == decision) /
                  self.size for decision in Decision.ALL]
        return Advisability(encouraged=shares[0], discouraged=shares[1],
                            neutral=shares[2])


@attributes(["kind", "outcomes", "histogram", "mean_outcome",
             "advisability"])
class StrategyEvaluation(object):
    """
    The outcomes of the units under a strategy.

    :ivar unicode kind: The ``StrategyKind``.
    :ivar numpy.ndarray outcomes: ``(n,)`` outcome of every unit.
    :ivar numpy.ndarray histogram: Unit counts per outcome degree
        ``0 .. N-1`` for a discrete outcome, else ``None``.
    :ivar float mean_outcome: The average outcome.
    :ivar Advisability advisability: The decision percentages.
    """


def _decide(effects, strategy):
    """
    Encourage where the treatment moves the outcome in the desirable
    direction by more than ``epsilon``, discourage where it moves it the
    other way.
    """
    if not strategy.lower_is_better:
        effects = -effects
    return np.where(
        effects < -strategy.epsilon, Decision.ENCOURAGE,
        np.where(effects > strategy.epsilon, Decision.DISCOURAGE,
                 Decision.NEUTRAL)).astype(object)


def _group_effects(outcomes):
    if outcomes.groups is None:
        raise MissingGroupKey("Strategy %s needs a group key." % (
            StrategyKind.TSC,))
    effects = individual_effects(outcomes)
    means = np.empty(outcomes.size)
    for group in set(outcomes.groups.tolist()):
        members = outcomes.groups == group
        means[members] = np.mean(effects[members])
    return means


def assign_from_outcomes(outcomes, strategy):
    """
    Decide every unit's treatment.

    ``a1`` of ``outcomes`` is the encouraged treatment and ``a0`` the
    discouraged one.

    :param PotentialOutcomes outcomes: The units' potential outcomes.
    :param TreatmentStrategy strategy: The strategy.

    :raises MissingObservedTreatment: If ``TSOb`` is asked for, or a unit is
        neutral, and the observed treatment is unknown.
    :raises MissingGroupKey: If ``TSC`` is asked for and the units carry no
        group labels.

    :return: An ``Assignment``.
    """
    n = outcomes.size
    observed = outcomes.observed_treatment
    kind = strategy.kind
    if kind == StrategyKind.TS0:
        decisions = np.full(n, Decision.DISCOURAGE, dtype=object)
    elif kind == StrategyKind.TS1:
        decisions = np.full(n, Decision.ENCOURAGE, dtype=object)
    elif kind == StrategyKind.TSOb:
        if observed is None:
            raise MissingObservedTreatment(
                "Strategy %s needs the observed treatment." % (kind,))
        decisions = np.where(
            observed == outcomes.a1, Decision.ENCOURAGE,
            np.where(observed == outcomes.a0, Decision.DISCOURAGE,
                     Decision.NEUTRAL)).astype(object)
    elif kind == StrategyKind.TSC:
        decisions = _decide(_group_effects(outcomes), strategy)
    elif kind == StrategyKind.TSI:
        decisions = _decide(individual_effects(outcomes), strategy)
    else:
        decisions = _decide(
            individual_effects(outcomes, True, strategy.cut), strategy)

    neutral = decisions == Decision.NEUTRAL
    if observed is None:
        if neutral.any():
            raise MissingObservedTreatment(
                "Neutral units keep their observed treatment, which is "
                "unknown.")
        observed = np.zeros(n)
    resolved = np.where(
        decisions == Decision.ENCOURAGE, float(outcomes.a1),
        np.where(decisions == Decision.DISCOURAGE, float(outcomes.a0),
                 observed))
    if kind == StrategyKind.TSOb:
        resolved = np.array(observed, dtype=np.float64)
    return Assignment(kind=kind, decisions=decisions, resolved=resolved)


def assign_strategy(trained, data, strategy, seed, logger=_logger):
    """
    Decide every unit's treatment from a trained model's potential outcomes
    under encouragement (``A = 1``) and discouragement (``A = 0``).

    :param TrainedModel trained: The model.
    :param Dataset data: The observed units.
    :param TreatmentStrategy strategy: The strategy.
    :param int seed: Seed of the dequantization noise.

    :return: ``(assignment, outcomes)``: the ``Assignment`` and the
        ``PotentialOutcomes`` it was decided from.
    """
    if data.size == 0:
        raise EmptyUnits("No units to assign treatments to.")
    with ESTIMATE_ACTION(logger, kind=strategy.kind, n_units=data.size):
        outcomes = potential_outcomes(trained, data, 1, 0, seed)
        assignment = assign_from_outcomes(outcomes, strategy)
        shares = assignment.advisability()
        STRATEGY_ASSIGNED(
            kind=strategy.kind, encouraged=shares.encouraged,
            discouraged=shares.discouraged, neutral=shares.neutral,
        ).write(logger)
    return assignment, outcomes


def evaluate_strategy(outcomes, assignment):
    """
    Every unit's outcome under the treatment its strategy resolved to.

    A unit evaluated at its observed treatment shows its observed outcome;
    otherwise it shows its potential outcome under ``a1`` or ``a0``.

    :param PotentialOutcomes outcomes: The units' potential outcomes.
    :param Assignment assignment: One decision per unit.

    :raises CausalQueryError: If the sizes differ.

    :return: A ``StrategyEvaluation``.
    """
    if assignment.size != outcomes.size:
        raise CausalQueryError("%d decisions for %d units" % (
            assignment.size, outcomes.size))
    resolved = assignment.resolved
    result = np.where(resolved == float(outcomes.a1), outcomes.y1,
                      outcomes.y0)
    if outcomes.observed_treatment is not None:
        result = np.where(resolved == outcomes.observed_treatment,
                          outcomes.observed_outcome, result)
    histogram = None
    if outcomes.cardinality is not None:
        histogram = np.bincount(result.astype(np.int64),
                                minlength=outcomes.cardinality)
    mean = float(np.mean(result)) if result.size else float("nan")
    return StrategyEvaluation(
        kind=assignment.kind, outcomes=result, histogram=histogram,
        mean_outcome=mean, advisability=assignment.advisability())


def strategy_worlds(outcomes, evaluations):
    """
    The average outcome of each group under each strategy.

    :param PotentialOutcomes outcomes: Supplies the group labels.
    :param list evaluations: ``StrategyEvaluation`` per strategy.

    :raises MissingGroupKey: If the units carry no group labels.

    :return: ``OrderedDict`` of group label to an ``OrderedDict`` of
        strategy kind to mean outcome, groups in label order.
    """
    if outcomes.groups is None:
        raise MissingGroupKey("Units have no group key.")
    worlds = OrderedDict()
    for group in sorted(set(outcomes.groups.tolist())):
        members = outcomes.groups == group
        worlds[group] = OrderedDict(
            (evaluation.kind, float(np.mean(evaluation.outcomes[members])))
            for evaluation in evaluations)
    return worlds
