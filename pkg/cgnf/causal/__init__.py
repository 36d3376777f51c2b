# Copyright cgnf developers.  See LICENSE file for details.

"""
Counterfactual inference on trained flows: abduction, action and
prediction; individual, average and group-conditional effects; and
treatment strategies built on those effects.
"""

from ._estimators import (
    CUT, CausalQueryError, EmptyUnits, MissingGroupKey,
    MissingObservedTreatment, EffectEstimate, PotentialOutcomes, abduct,
    predict_under, counterfactual_outcome, potential_outcomes,
    individual_effects, ace_from_outcomes, cace_from_outcomes, estimate_ice,
    estimate_ace, estimate_cace, estimate_interventional_ace,
)
from ._strategy import (
    StrategyKind, Decision, DEFAULT_EPSILON, TreatmentStrategy, Assignment,
    Advisability, StrategyEvaluation, assign_from_outcomes, assign_strategy,
    evaluate_strategy, strategy_worlds,
)

__all__ = [
    "CUT", "CausalQueryError", "EmptyUnits", "MissingGroupKey",
    "MissingObservedTreatment", "EffectEstimate", "PotentialOutcomes",
    "abduct", "predict_under", "counterfactual_outcome",
    "potential_outcomes", "individual_effects", "ace_from_outcomes",
    "cace_from_outcomes", "estimate_ice", "estimate_ace", "estimate_cace",
    "estimate_interventional_ace", "StrategyKind", "Decision",
    "DEFAULT_EPSILON", "TreatmentStrategy", "Assignment", "Advisability",
    "StrategyEvaluation", "assign_from_outcomes", "assign_strategy",
    "evaluate_strategy", "strategy_worlds",
]
