# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.synth.test.test_scm -*-

"""
The SCMs shipped with ``cgnf``.
"""

from twisted.python.filepath import FilePath

from ._mechanism import SynthError
from ._scm import load_scm


__all__ = ["FIXTURES", "FIXTURE_NAMES", "UnknownFixture", "fixture_path",
           "load_fixture"]


FIXTURES = FilePath(__file__).sibling("fixtures")

FIXTURE_NAMES = (
    u"linear-gaussian", u"linear-discrete", u"binary-interaction",
    u"poverty-degrees",
)


class UnknownFixture(SynthError):
    """
    No shipped SCM has the requested name.
    """


def fixture_path(name):
    """
    :param unicode name: One of ``FIXTURE_NAMES``.

    :raises UnknownFixture: For any other name.

    :return: The ``FilePath`` of the fixture's YAML document.
    """
    if name not in FIXTURE_NAMES:
        raise UnknownFixture("No fixture %r; choose from %s" % (
            name, u", ".join(FIXTURE_NAMES)))
    return FIXTURES.child(name + u".yml")


def load_fixture(name):
    """
    :return: The ``SyntheticScm`` of the shipped fixture ``name``.
    """
    return load_scm(fixture_path(name))
