# Copyright cgnf developers.  See LICENSE file for details.

from eliot import Field, ActionType, MessageType


def _system(name):
    return u"cgnf:synth:" + name


METHOD = Field.forTypes(
    u"method", [str],
    u"How the ground-truth effects were computed: closed_form, enumeration "
    u"or monte_carlo.")

ACE = Field.forTypes(
    u"ace", [float], u"The ground-truth average causal effect.")

N_DRAWS = Field.forTypes(
    u"n_draws", [int],
    u"Noise vectors (or enumerated noise states) the oracle used.")

ROWS = Field.forTypes(
    u"rows", [int], u"The number of rows drawn from a synthetic SCM.")

SEED = Field.forTypes(
    u"seed", [int], u"The seed of the SCM noise.")


SAMPLE = ActionType(
    _system(u"sample"),
    [ROWS, SEED],
    [],
    u"Rows are being drawn from a synthetic SCM.")


ORACLE = MessageType(
    _system(u"oracle"),
    [METHOD, ACE, N_DRAWS],
    u"Ground-truth effects of a synthetic SCM were computed.")
