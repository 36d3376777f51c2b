# Copyright cgnf developers.  See LICENSE file for details.

from eliot import Field, MessageType


def _system(name):
    return u"cgnf:script:" + name


ARGV = Field.forTypes(
    u"argv", [list], u"The argument list a command was started with.")

ERROR = Field.forTypes(
    u"error", [str], u"The message of the error which ended a command.")


ARGUMENTS = MessageType(
    _system(u"arguments"),
    [ARGV],
    u"A command-line script started.")


FAILED = MessageType(
    _system(u"failed"),
    [ERROR],
    u"A command-line script ended with a runtime error.")
