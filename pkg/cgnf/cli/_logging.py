# Copyright cgnf developers.  See LICENSE file for details.

from eliot import Field, ActionType, MessageType


def _system(name):
    return u"cgnf:cli:" + name


NAME = Field.forTypes(
    u"name", [str], u"The name of the sub-command.")

PATH = Field.forTypes(
    u"path", [str], u"The file a report was written to.")

SEED = Field.forTypes(
    u"seed", [int], u"The run seed.")


COMMAND = ActionType(
    _system(u"command"),
    [NAME],
    [],
    u"A cgnf sub-command is running.")


SEED_STARTED = MessageType(
    _system(u"seed"),
    [NAME, SEED],
    u"A sub-command started the work of one run seed.")


REPORT_WRITTEN = MessageType(
    _system(u"report"),
    [PATH],
    u"A report file was written.")
