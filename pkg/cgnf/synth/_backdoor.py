# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.synth.test.test_backdoor -*-

"""
Backdoor adjustment over the parents of the treatment, an effect estimate
independent of any flow model.
"""

import numpy as np
import pandas as pd

from ..causal import EffectEstimate
from ..graph import NodeRole, parents, role_node
from ._mechanism import SynthError


__all__ = [
    "PositivityViolation", "ContinuousAdjustment", "adjustment_set",
    "backdoor_ace",
]


class PositivityViolation(SynthError):
    """
    An adjustment stratum lacks units at one of the compared treatments.
    """


class ContinuousAdjustment(SynthError):
    """
    The treatment or an adjustment variable is continuous.
    """


def adjustment_set(dag, treatment):
    """
    :return: The sorted names of the parents of ``treatment``, which block
        every backdoor path from it to the outcome.
    """
    return sorted(parents(dag, treatment))


# Grouping column of the single stratum used when nothing is adjusted for;
# not a valid node name.
_EVERYONE = u"(all units)"


def _stratum_name(names, key):
    if not names:
        return _EVERYONE
    return u", ".join(u"%s=%d" % (name, value)
                      for name, value in zip(names, key))


def backdoor_ace(data, dag, a1, a0):
    """
    The plug-in estimate
    ``sum_s P(s) (E[Y | A = a1, s] - E[Y | A = a0, s])`` over strata ``s``
    of the treatment's parents.

    With no parents this is the difference of the two treatment-group means.

    :param Dataset data: The observed units; its DAG carries the roles.
    :param CausalDag dag: The DAG whose treatment parents are adjusted for.
    :param a1: Treatment value of the first arm.
    :param a0: Treatment value of the second arm.

    :raises ContinuousAdjustment: If the treatment or an adjustment variable
        is continuous.
    :raises PositivityViolation: If a stratum has no unit at ``a1`` or none
        at ``a0``.

    :return: An ``EffectEstimate`` whose standard error combines the
        within-stratum sampling variances.
    """
    if set(dag.nodes) != set(data.dag.nodes):
        raise SynthError("DAG nodes %s do not match the dataset's %s" % (
            sorted(dag.nodes), sorted(data.dag.nodes)))
    treatment = role_node(data.dag, NodeRole.TREATMENT)
    outcome = role_node(data.dag, NodeRole.OUTCOME)
    adjust = adjustment_set(dag, treatment)
    for name in [treatment] + adjust:
        if not data.spec_of(name).discrete:
            raise ContinuousAdjustment(
                "Backdoor adjustment needs discrete %s." % (name,))

    nodes = list(data.dag.nodes)
    frame = pd.DataFrame(data.values, columns=nodes)
    if not adjust:
        frame[_EVERYONE] = 0.0
    keys = adjust or [_EVERYONE]
    shares = frame.groupby(keys).size() / float(data.size)
    arms = frame[frame[treatment].isin([float(a1), float(a0)])].groupby(
        keys + [treatment])[outcome].agg(["mean", "var", "count"])

    estimate, variance = 0.0, 0.0
    for stratum, share in shares.items():
        if not isinstance(stratum, tuple):
            stratum = (stratum,)
        cells = []
        for a in (float(a1), float(a0)):
            if stratum + (a,) not in arms.index:
                raise PositivityViolation(
                    "No units with %s=%s in stratum %s" % (
                        treatment, a, _stratum_name(adjust, stratum)))
            cells.append(arms.loc[stratum + (a,)])
        treated, control = cells
        estimate += share * (treated["mean"] - control["mean"])
        variance += share ** 2 * (
            np.nan_to_num(treated["var"]) / treated["count"] +
            np.nan_to_num(control["var"]) / control["count"])
    return EffectEstimate(estimate=estimate, std_error=np.sqrt(variance),
                          n_units=data.size, n_noise_draws=0)
