# Copyright cgnf developers.  See LICENSE file for details.

from eliot import Field, ActionType, MessageType


def _system(name):
    return u"cgnf:causal:" + name


KIND = Field.forTypes(
    u"kind", [str],
    u"The kind of causal query: ice, ace, cace, interventional_ace or a "
    u"treatment strategy name.")

N_UNITS = Field.forTypes(
    u"n_units", [int], u"The number of units the query is over.")

ESTIMATE = Field.forTypes(
    u"estimate", [float], u"The estimated effect.")

ENCOURAGED = Field.forTypes(
    u"encouraged", [float], u"Percentage of units encouraged.")

DISCOURAGED = Field.forTypes(
    u"discouraged", [float], u"Percentage of units discouraged.")

NEUTRAL = Field.forTypes(
    u"neutral", [float], u"Percentage of units left as observed.")


ESTIMATE_ACTION = ActionType(
    _system(u"estimate"),
    [KIND, N_UNITS],
    [],
    u"A causal effect or a treatment strategy is being computed from a "
    u"trained model.")


EFFECT_ESTIMATED = MessageType(
    _system(u"effect"),
    [KIND, ESTIMATE],
    u"An effect estimate was computed.")


STRATEGY_ASSIGNED = MessageType(
    _system(u"assigned"),
    [KIND, ENCOURAGED, DISCOURAGED, NEUTRAL],
    u"A treatment strategy assigned its decisions.")
