# Copyright cgnf developers.  See LICENSE file for details.

"""Tests for :module:`cgnf.common.script`."""

import os
import sys
from os import getpid

from eliot import Message
from twisted.internet import task
from twisted.internet.defer import succeed, fail
from twisted.python import usage
from twisted.python.filepath import FilePath
from twisted.trial.unittest import SynchronousTestCase

from ..script import cgnf_standard_options, CGNFScriptRunner
from ...testtools import (
    help_problems, FakeSysModule, StandardOptionsTestsMixin,
)


def fake_reactor():
    """
    A reactor which ``task.react`` can drive synchronously.
    """
    # XXX: We shouldn't be using this private fake and Twisted probably
    # shouldn't either. See https://twistedmatrix.com/trac/ticket/6200 and
    # https://twistedmatrix.com/trac/ticket/7527
    from twisted.test.test_task import _FakeReactor
    return _FakeReactor()


class CGNFScriptRunnerInitTests(SynchronousTestCase):
    """Tests for :py:meth:`CGNFScriptRunner.__init__`."""

    def test_sys_default(self):
        """
        `CGNFScriptRunner.sys` is `sys` by default.
        """
        self.assertIs(
            sys,
            CGNFScriptRunner(script=None, options=None).sys_module
        )

    def test_sys_override(self):
        """
        `CGNFScriptRunner.sys` can be overridden in the constructor.
        """
        dummy_sys = object()
        self.assertIs(
            dummy_sys,
            CGNFScriptRunner(script=None, options=None,
                             sys_module=dummy_sys).sys_module
        )

    def test_react(self):
        """
        `CGNFScriptRunner._react` is ``task.react`` by default
        """
        self.assertIs(
            task.react,
            CGNFScriptRunner(script=None, options=None)._react
        )


class CGNFScriptRunnerParseOptionsTests(SynchronousTestCase):
    """Tests for :py:meth:`CGNFScriptRunner._parse_options`."""

    def test_parse_options(self):
        """
        ``CGNFScriptRunner._parse_options`` accepts a list of arguments,
        passes them to the `parseOptions` method of its ``options`` attribute
        and returns the populated options instance.
        """
        class OptionsSpy(usage.Options):
            def parseOptions(self, arguments):
                self.parse_options_arguments = arguments

        expected_arguments = [object(), object()]
        runner = CGNFScriptRunner(script=None, options=OptionsSpy())
        options = runner._parse_options(expected_arguments)
        self.assertEqual(expected_arguments, options.parse_options_arguments)

    def test_parse_options_usage_error(self):
        """
        `CGNFScriptRunner._parse_options` catches `usage.UsageError`
        exceptions and writes the help text and an error message to `stderr`
        before exiting with status 1.
        """
        expected_message = u'foo bar baz'

        class FakeOptions(usage.Options):
            synopsis = u'Usage: test_command [options]'

            def parseOptions(self, arguments):
                raise usage.UsageError(expected_message)

        fake_sys = FakeSysModule()

        runner = CGNFScriptRunner(script=None, options=FakeOptions(),
                                  sys_module=fake_sys)
        error = self.assertRaises(SystemExit, runner._parse_options, [])
        expected_error_message = u'ERROR: %s\n' % (expected_message,)
        error_text = fake_sys.stderr.getvalue()
        self.assertEqual(
            (1, [], expected_error_message),
            (error.code,
             help_problems(u'test_command', error_text),
             error_text[-len(expected_error_message):])
        )


class CGNFScriptRunnerMainTests(SynchronousTestCase):
    """Tests for :py:meth:`CGNFScriptRunner.main`."""

    def runner(self, script, options, argv):
        """
        A runner with a fake reactor, a fake ``sys`` and a temporary log
        directory.
        """
        fake_sys = FakeSysModule(argv=argv)
        runner = CGNFScriptRunner(script, options, reactor=fake_reactor(),
                                  sys_module=fake_sys)
        runner.log_directory = FilePath(self.mktemp())
        return runner

    def test_main_uses_sysargv(self):
        """
        ``CGNFScriptRunner.main`` uses ``self.sys_module.argv``.
        """
        class SpyOptions(usage.Options):
            def opt_hello(self, value):
                self.value = value

        class SpyScript(object):
            def main(self, reactor, arguments):
                self.reactor = reactor
                self.arguments = arguments
                return succeed(None)

        script = SpyScript()
        runner = self.runner(script, SpyOptions(),
                             [u"cgnf", u"--hello", u"world"])
        error = self.assertRaises(SystemExit, runner.main)
        self.assertEqual((0, u"world"), (error.code, script.arguments.value))

    def test_script_error(self):
        """
        An error raised while the script runs ends the process with status 2
        and its message on `stderr`.
        """
        class FailingScript(object):
            def main(self, reactor, arguments):
                return fail(ValueError(u"no such column"))

        runner = self.runner(FailingScript(), usage.Options(), [u"cgnf"])
        error = self.assertRaises(SystemExit, runner.main)
        self.assertEqual(
            (2, u"ERROR: no such column\n"),
            (error.code, runner.sys_module.stderr.getvalue()))

    def test_script_exit(self):
        """
        A ``SystemExit`` raised by the script keeps its status.
        """
        class ExitingScript(object):
            def main(self, reactor, arguments):
                raise SystemExit(3)

        runner = self.runner(ExitingScript(), usage.Options(), [u"cgnf"])
        error = self.assertRaises(SystemExit, runner.main)
        self.assertEqual(3, error.code)

    def test_verbose_echoes_log(self):
        """
        With verbosity above zero, log messages are echoed to `stderr`.
        """
        @cgnf_standard_options
        class Options(usage.Options):
            pass

        runner = self.runner(LoggingScript(), Options(), [u"cgnf", u"-v"])
        self.assertRaises(SystemExit, runner.main)
        self.assertIn(u"it's alive", runner.sys_module.stderr.getvalue())


class LoggingScript(object):
    """
    Log a message.
    """
    def main(self, *args, **kwargs):
        Message.new(message_type=u"cgnf:test:alive",
                    text=u"it's alive").write()
        return succeed(None)


class CGNFScriptRunnerLoggingTests(SynchronousTestCase):
    """
    Tests for :py:class:`CGNFScriptRunner` logging."""

    def run_script(self, logs, argv, script=None):
        """
        Run ``script`` with its log in ``logs`` and return the log file.
        """
        if script is None:
            script = LoggingScript()
        runner = CGNFScriptRunner(script, usage.Options(),
                                  reactor=fake_reactor(),
                                  sys_module=FakeSysModule(argv=argv))
        runner.log_directory = logs
        try:
            runner.main()
        except SystemExit:
            pass
        return logs.child(u"%s-%d.log" % (os.path.basename(argv[0]),
                                          getpid()))

    def test_adds_log_observer(self):
        """
        ``CGNFScriptRunner.main`` logs to the given directory using a
        filename composed of process name and pid.
        """
        path = self.run_script(FilePath(self.mktemp()),
                               [u"/usr/bin/mythingie"])
        self.assertIn(b"it's alive", path.getContent())

    def test_adds_log_observer_existing_directory(self):
        """
        ``CGNFScriptRunner.main`` logs to the given directory even if it
        already exists.
        """
        logs = FilePath(self.mktemp())
        logs.makedirs()
        path = self.run_script(logs, [u"/usr/bin/mythingie"])
        self.assertIn(b"it's alive", path.getContent())

    def test_logs_arguments(self):
        """
        ``CGNFScriptRunner.main`` logs ``self.sys_module.argv``.
        """
        path = self.run_script(FilePath(self.mktemp()),
                               [u"mythingie", u"--unknown"])
        self.assertIn(b"--unknown", path.getContent())

    def test_default_log_directory(self):
        """
        ``CGNFScriptRunner.main`` logs to ``~/.cgnf/logs`` by default.
        """
        runner = CGNFScriptRunner(None, None)
        self.assertEqual(
            runner.log_directory,
            FilePath(os.path.expanduser(u"~/.cgnf/logs")))

    def test_no_logging_if_directory_unusable(self):
        """
        If the log directory cannot be created this does not prevent the
        script from running.
        """
        blocker = FilePath(self.mktemp())
        blocker.setContent(b"not a directory")

        class Script(object):
            ran = False

            def main(self, *args, **kwargs):
                self.ran = True
                return succeed(None)

        script = Script()
        self.run_script(blocker.child(u"logs"), [u"mythingie"], script)
        self.assertTrue(script.ran)


@cgnf_standard_options
class TestOptions(usage.Options):
    """An unmodified ``usage.Options`` subclass for use in testing."""


class CGNFStandardOptionsTests(StandardOptionsTestsMixin,
                               SynchronousTestCase):
    """Tests for ``cgnf_standard_options``

    Using a decorating an unmodified ``usage.Options`` subclass.
    """
    options = TestOptions
