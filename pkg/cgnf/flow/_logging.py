# Copyright cgnf developers.  See LICENSE file for details.

from eliot import Field, MessageType


def _system(name):
    return u"cgnf:flow:" + name


NODE = Field.forTypes(
    u"node", [str],
    u"The name of the causal variable being solved for.")


DOUBLINGS = Field.forTypes(
    u"doublings", [int],
    u"How many times the root bracket was doubled beyond [-10, 10].")


BRACKET_EXPANDED = MessageType(
    _system(u"bracket_expanded"),
    [NODE, DOUBLINGS],
    u"Inverting a transformer needed a wider bracket than the default.")
