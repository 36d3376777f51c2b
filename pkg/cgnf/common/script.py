# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.common.test.test_script -*-

"""Helpers for cgnf shell commands."""

import os
import sys

from eliot import FileDestination, add_destinations, remove_destination
from eliot import Logger, write_failure

from twisted.internet import task
from twisted.internet.defer import maybeDeferred
from twisted.python import usage
from twisted.python.filepath import FilePath

from zope.interface import Interface

from .. import __version__
from ._logging import ARGUMENTS, FAILED


__all__ = [
    'cgnf_standard_options',
    'ICommandLineScript',
    'CGNFScriptRunner',
]


def cgnf_standard_options(cls):
    """Add various standard command line options to cgnf commands.

    :param type cls: The `class` to decorate.
    :return: The decorated `class`.
    """
    original_init = cls.__init__

    def __init__(self, *args, **kwargs):
        """Set the default verbosity to `0`

        Calls the original ``cls.__init__`` method finally.

        :param sys_module: An optional ``sys`` like module for use in
            testing. Defaults to ``sys``.
        """
        self._sys_module = kwargs.pop('sys_module', sys)
        self['verbosity'] = 0
        original_init(self, *args, **kwargs)
    cls.__init__ = __init__

    def opt_version(self):
        """Print the program's version and exit."""
        self._sys_module.stdout.write(__version__ + u'\n')
        raise SystemExit(0)
    cls.opt_version = opt_version

    def opt_verbose(self):
        """Turn on verbose logging."""
        self['verbosity'] += 1
    cls.opt_verbose = opt_verbose
    cls.opt_v = opt_verbose

    return cls


class ICommandLineScript(Interface):
    """A script which can be run by ``CGNFScriptRunner``."""
    def main(reactor, options):
        """
        :param reactor: A Twisted reactor.
        :param options: The parsed ``usage.Options``.
        :return: ``None`` or a ``Deferred`` which fires when the script has
            completed.
        """


class CGNFScriptRunner(object):
    """An API for running standard cgnf scripts.

    Exit status is 0 on success, 1 for a usage or configuration error and 2
    for an error while the script ran.

    :ivar ICommandLineScript script: See ``script`` of ``__init__``.
    :ivar _react: A reference to ``task.react`` which can be overridden for
        testing purposes.
    :ivar logger: The ``eliot.Logger`` runtime errors are written to.
    """
    _react = staticmethod(task.react)

    # Location where logs will be written, overrideable by tests:
    log_directory = FilePath(os.path.expanduser(u"~/.cgnf/logs"))

    logger = Logger()

    def __init__(self, script, options, reactor=None, sys_module=None):
        """
        :param ICommandLineScript script: The script object to be run.
        :param usage.Options options: An option parser object.
        :param sys_module: An optional ``sys`` like module for use in
            testing. Defaults to ``sys``.
        """
        self.script = script
        self.options = options
        self._reactor = reactor

        if sys_module is None:
            sys_module = sys
        self.sys_module = sys_module

    def _parse_options(self, arguments):
        """Parse the options defined in the script's options class.

        ``UsageError``s are caught and printed to `stderr` and the script then
        exits.

        :param list arguments: The command line arguments to be parsed.
        :return: The populated options.
        """
        try:
            self.options.parseOptions(arguments)
        except usage.UsageError as e:
            self.sys_module.stderr.write(str(self.options))
            self.sys_module.stderr.write(u'ERROR: %s\n' % (e,))
            raise SystemExit(1)
        return self.options

    def _open_log(self):
        """
        Send eliot messages to ``<log_directory>/<script>-<pid>.log``.

        :return: The ``FileDestination`` and its open file, or ``None`` if
            the directory cannot be written to.
        """
        try:
            if not self.log_directory.exists():
                self.log_directory.makedirs()
            log_path = self.log_directory.child(
                u"%s-%d.log" % (os.path.basename(self.sys_module.argv[0]),
                                os.getpid()))
            log_file = log_path.open("a")
        except (OSError, IOError):
            return None
        destination = FileDestination(file=log_file)
        add_destinations(destination)
        return destination, log_file

    def _run(self, reactor, options):
        """
        Run the script, turning a failure into exit status 2 with the error
        on `stderr` and its traceback in the log.
        """
        def failed(failure):
            if failure.check(SystemExit):
                return failure
            write_failure(failure, self.logger)
            FAILED(error=failure.getErrorMessage()).write(self.logger)
            self.sys_module.stderr.write(
                u'ERROR: %s\n' % (failure.getErrorMessage(),))
            raise SystemExit(2)
        d = maybeDeferred(self.script.main, reactor, options)
        d.addErrback(failed)
        return d

    def main(self):
        """Parse arguments and run the script's main function via ``react``."""
        destinations = []
        opened = self._open_log()
        if opened is not None:
            destinations.append(opened[0])
            ARGUMENTS(argv=list(self.sys_module.argv)).write(self.logger)
        try:
            options = self._parse_options(self.sys_module.argv[1:])
            if options.get('verbosity', 0) > 0:
                echo = FileDestination(file=self.sys_module.stderr)
                add_destinations(echo)
                destinations.append(echo)
            # XXX: We shouldn't be using this private _reactor API. See
            # https://twistedmatrix.com/trac/ticket/6200 and
            # https://twistedmatrix.com/trac/ticket/7527
            self._react(self._run, (options,), _reactor=self._reactor)
        finally:
            # Not strictly necessary, but nice cleanup for tests:
            for destination in destinations:
                remove_destination(destination)
            if opened is not None:
                opened[1].close()

