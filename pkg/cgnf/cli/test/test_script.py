# Copyright cgnf developers.  See LICENSE file for details.

"""
Tests for ``cgnf.cli.script``.
"""

import json

import numpy as np
import pandas as pd

from yaml import safe_dump, safe_load

from twisted.python.filepath import FilePath
from twisted.python.usage import UsageError
from twisted.trial.unittest import SynchronousTestCase

from ...causal import (
    StrategyKind, PotentialOutcomes, individual_effects, potential_outcomes,
)
from ...common.script import CGNFScriptRunner
from ...common.test.test_script import fake_reactor
from ...graph import load_dag
from ...synth import OracleMethod, fixture_path, load_fixture, sample_scm
from ...testtools import (
    FakeSysModule, CGNFScriptTestsMixin, StandardOptionsTestsMixin,
)
from ...train import load_column_spec, load_dataset, load_model
from ..script import (
    CGNFOptions, CGNFScript, ModelMissing, RowOutOfRange, ValidationFailed,
    _strategies_check,
)
from .._config import load_run_config, model_path


# Small enough to train in well under a second.
TINY = dict(conditioner_widths=[4], transformer_widths=[4], context_width=2,
            quadrature_nodes=8, max_epochs=2, batch_size=64,
            fractions=[0.8, 0.1, 0.1])

ROWS = 120


def run_command(arguments):
    """
    Parse ``arguments`` as a ``cgnf`` command line and run the sub-command.

    :return: What the sub-command wrote to standard output.
    """
    sys_module = FakeSysModule(argv=[u"cgnf"] + arguments)
    options = CGNFOptions(sys_module=sys_module)
    options.parseOptions(arguments)
    CGNFScript().main(None, options)
    return sys_module.stdout.getvalue()


def synthesize(case):
    """
    Sample the ``binary-interaction`` fixture into a temporary directory and
    configure two seeds of tiny models for it.

    :return: The ``FilePath`` of the run configuration.
    """
    directory = FilePath(case.mktemp())
    run_command([u"synth", u"--output", directory.path, u"--rows",
                 str(ROWS), u"--seed", u"3", u"binary-interaction"])
    config = directory.child(u"run.yml")
    raw = safe_load(config.getContent())
    raw.update(train=TINY, seeds=[0, 1])
    config.setContent(safe_dump(raw).encode("utf-8"))
    return config


def read_json(path):
    return json.loads(path.getContent().decode("utf-8"))


class CGNFScriptTests(CGNFScriptTestsMixin, SynchronousTestCase):
    """
    Tests for ``CGNFScript``.
    """
    script = CGNFScript
    options = CGNFOptions
    command_name = u"cgnf"


class CGNFOptionsTests(StandardOptionsTestsMixin, SynchronousTestCase):
    """
    Tests for ``CGNFOptions``.
    """
    options = CGNFOptions

    def test_command_required(self):
        """
        A sub-command must be given.
        """
        self.assertRaises(UsageError, CGNFOptions().parseOptions, [])

    def test_missing_input(self):
        """
        Input files that do not exist are a usage error, raised before any
        work is done.
        """
        missing = FilePath(self.mktemp())
        self.assertRaises(
            UsageError, CGNFOptions().parseOptions,
            [u"train", u"--dag", missing.child(u"dag.cdag").path,
             u"--data", missing.child(u"data.csv").path,
             u"--columns", missing.child(u"columns.json").path])


class SynthTests(SynchronousTestCase):
    """
    Tests for ``cgnf synth``.
    """
    def setUp(self):
        self.directory = synthesize(self).parent()

    def test_files(self):
        """
        The dataset, its column spec, its DAG, the true effects and a run
        configuration are written.
        """
        self.assertEqual(
            [True] * 5,
            [self.directory.child(name).isfile() for name in (
                u"data.csv", u"columns.json", u"dag.cdag", u"oracle.json",
                u"run.yml")])

    def test_dataset(self):
        """
        The written dataset loads with its column spec and DAG.
        """
        dag = load_dag(self.directory.child(u"dag.cdag"))
        specs = load_column_spec(self.directory.child(u"columns.json"))
        data = load_dataset(self.directory.child(u"data.csv"), specs, dag)
        self.assertEqual((ROWS, [u"C", u"A", u"Y"]),
                         (data.size, list(dag.nodes)))

    def test_oracle(self):
        """
        The true effects of an SCM with discrete noise are enumerated.
        """
        oracle = read_json(self.directory.child(u"oracle.json"))
        self.assertEqual(
            (OracleMethod.ENUMERATION, [u"0", u"1"]),
            (oracle[u"method"], sorted(oracle[u"cace"])))
        self.assertAlmostEqual(0.5, oracle[u"ace"][u"estimate"], places=12)
        self.assertAlmostEqual(
            0.0, oracle[u"cace"][u"0"][u"estimate"], places=12)
        self.assertAlmostEqual(
            1.0, oracle[u"cace"][u"1"][u"estimate"], places=12)

    def test_deterministic(self):
        """
        The same seed samples the same dataset.
        """
        other = FilePath(self.mktemp())
        run_command([u"synth", u"--output", other.path, u"--rows",
                     str(ROWS), u"--seed", u"3", u"binary-interaction"])
        self.assertEqual(
            self.directory.child(u"data.csv").getContent(),
            other.child(u"data.csv").getContent())

    def test_scm_file(self):
        """
        An SCM may be given as the path of its YAML file.
        """
        path = FilePath(self.mktemp())
        path.setContent(fixture_path(u"binary-interaction").getContent())
        output = FilePath(self.mktemp())
        run_command([u"synth", u"--output", output.path, u"--rows", u"10",
                     path.path])
        self.assertTrue(output.child(u"data.csv").isfile())

    def test_unknown_scm(self):
        """
        An SCM that is neither a fixture nor a file is a usage error.
        """
        self.assertRaises(
            UsageError, CGNFOptions().parseOptions,
            [u"synth", u"no-such-scm"])

    def test_no_rows(self):
        """
        At least one row must be sampled.
        """
        self.assertRaises(
            UsageError, CGNFOptions().parseOptions,
            [u"synth", u"--rows", u"0", u"binary-interaction"])


class TrainTests(SynchronousTestCase):
    """
    Tests for ``cgnf train``.
    """
    def setUp(self):
        self.config = synthesize(self)
        self.directory = self.config.parent()
        run_command([u"train", u"--config", self.config.path])

    def test_models(self):
        """
        One model file is written per run seed.
        """
        models = self.directory.child(u"models")
        self.assertEqual(
            [True, True],
            [models.child(u"model-%d.cgnf" % (seed,)).isfile()
             for seed in (0, 1)])

    def test_metrics(self):
        """
        ``metrics.json`` lists every seed's losses.
        """
        metrics = read_json(
            self.directory.child(u"reports").child(u"metrics.json"))
        self.assertEqual(
            [0, 1], [entry[u"seed"] for entry in metrics[u"seeds"]])

    def test_deterministic(self):
        """
        Training again with the same seeds writes identical metrics.
        """
        path = self.directory.child(u"reports").child(u"metrics.json")
        first = path.getContent()
        run_command([u"train", u"--config", self.config.path])
        self.assertEqual(first, path.getContent())

    def test_seed_override(self):
        """
        ``--seeds`` overrides the configured seeds.
        """
        output = FilePath(self.mktemp())
        run_command([u"train", u"--config", self.config.path, u"--seeds",
                     u"5", u"--output", output.path])
        metrics = read_json(output.child(u"metrics.json"))
        self.assertEqual(
            [5], [entry[u"seed"] for entry in metrics[u"seeds"]])


class EffectsTests(SynchronousTestCase):
    """
    Tests for ``cgnf effects``.
    """
    def setUp(self):
        self.config = synthesize(self)
        self.reports = self.config.parent().child(u"reports")
        run_command([u"train", u"--config", self.config.path])

    def test_ace(self):
        """
        ``ace.json`` holds one estimate per seed.
        """
        run_command([u"effects", u"--config", self.config.path])
        ace = read_json(self.reports.child(u"ace.json"))
        self.assertEqual(
            ([0, 1], [ROWS, ROWS], False),
            ([entry[u"seed"] for entry in ace[u"ace"][u"per_seed"]],
             [entry[u"n_units"] for entry in ace[u"ace"][u"per_seed"]],
             u"interventional_ace" in ace))

    def test_cace(self):
        """
        ``cace.csv`` has one row per group.
        """
        run_command([u"effects", u"--config", self.config.path])
        frame = pd.read_csv(self.reports.child(u"cace.csv").path,
                            dtype={u"group": str})
        self.assertEqual(
            ([u"0", u"1"], [u"group", u"seed_0", u"seed_1", u"mean", u"std",
                            u"includes_zero"]),
            (frame[u"group"].tolist(), list(frame.columns)))

    def test_same_treatment(self):
        """
        Comparing a treatment with itself gives no effect.
        """
        run_command([u"effects", u"--config", self.config.path, u"--a1",
                     u"0", u"--a0", u"0"])
        ace = read_json(self.reports.child(u"ace.json"))
        self.assertEqual(
            [0.0, 0.0],
            [entry[u"estimate"] for entry in ace[u"ace"][u"per_seed"]])

    def test_interventional(self):
        """
        Configured interventional draws add the interventional estimate.
        """
        raw = safe_load(self.config.getContent())
        raw[u"interventional_draws"] = 50
        self.config.setContent(safe_dump(raw).encode("utf-8"))
        run_command([u"effects", u"--config", self.config.path])
        ace = read_json(self.reports.child(u"ace.json"))
        self.assertEqual(
            [0, 1], [entry[u"seed"] for entry in
                     ace[u"interventional_ace"][u"per_seed"]])

    def test_model_missing(self):
        """
        A seed without a trained model is an error.
        """
        self.assertRaises(
            ModelMissing, run_command,
            [u"effects", u"--config", self.config.path, u"--seeds", u"9"])


class StrategiesTests(SynchronousTestCase):
    """
    Tests for ``cgnf strategies``.
    """
    def setUp(self):
        self.config = synthesize(self)
        self.reports = self.config.parent().child(u"reports")
        run_command([u"train", u"--config", self.config.path])

    def test_files(self):
        """
        The strategy tables and their summary are written.
        """
        run_command([u"strategies", u"--config", self.config.path])
        self.assertEqual(
            [True] * 5,
            [self.reports.child(name).isfile() for name in (
                u"histogram.csv", u"advisability.csv", u"mean_outcome.csv",
                u"strategies.json", u"worlds.csv")])

    def test_histogram_counts(self):
        """
        Every strategy's histogram counts each unit once per seed.
        """
        run_command([u"strategies", u"--config", self.config.path])
        frame = pd.read_csv(self.reports.child(u"histogram.csv").path)
        totals = frame.groupby([u"strategy", u"seed"])[u"count"].sum()
        self.assertEqual(({ROWS}, 6 * 2), (set(totals.tolist()), len(totals)))

    def test_fixed_strategies(self):
        """
        ``TS0`` discourages and ``TS1`` encourages every unit.
        """
        run_command([u"strategies", u"--config", self.config.path])
        frame = pd.read_csv(
            self.reports.child(u"advisability.csv").path
        ).set_index([u"strategy", u"seed"])
        columns = [u"encouraged", u"discouraged", u"neutral"]
        self.assertEqual(
            ([0.0, 100.0, 0.0], [100.0, 0.0, 0.0]),
            (frame.loc[(StrategyKind.TS0, 1), columns].tolist(),
             frame.loc[(StrategyKind.TS1, 1), columns].tolist()))

    def test_observed_strategy(self):
        """
        Keeping the observed treatment reproduces the observed outcomes.
        """
        run_command([u"strategies", u"--config", self.config.path])
        directory = self.config.parent()
        data = load_dataset(
            directory.child(u"data.csv"),
            load_column_spec(directory.child(u"columns.json")),
            load_dag(directory.child(u"dag.cdag")))
        observed = np.bincount(
            data.values[:, 2].astype(int), minlength=3).tolist()
        frame = pd.read_csv(self.reports.child(u"histogram.csv").path)
        for seed in (0, 1):
            rows = frame[(frame[u"strategy"] == StrategyKind.TSOb) &
                         (frame[u"seed"] == seed)]
            self.assertEqual(observed, rows[u"count"].tolist())

    def test_selected(self):
        """
        ``--strategies`` restricts the evaluated strategies.
        """
        run_command([u"strategies", u"--config", self.config.path,
                     u"--strategies", u"TS0,TS1"])
        summary = read_json(self.reports.child(u"strategies.json"))
        self.assertEqual([u"TS0", u"TS1"], sorted(summary))


class CounterfactualTests(SynchronousTestCase):
    """
    Tests for ``cgnf counterfactual``.
    """
    def setUp(self):
        self.config = synthesize(self)
        run_command([u"train", u"--config", self.config.path])

    def test_observed_treatment(self):
        """
        Setting a unit's treatment to its observed value reproduces its
        observed outcome.
        """
        directory = self.config.parent()
        data = load_dataset(
            directory.child(u"data.csv"),
            load_column_spec(directory.child(u"columns.json")),
            load_dag(directory.child(u"dag.cdag")))
        treatment = data.values[4, 1]
        answer = safe_load(run_command(
            [u"counterfactual", u"--config", self.config.path, u"4",
             str(treatment)]))
        self.assertEqual(
            (4, 0, answer[u"observed_outcome"]),
            (answer[u"row"], answer[u"seed"],
             answer[u"potential_outcome"]))

    def test_seed(self):
        """
        ``--seed`` selects the model answering the question.
        """
        answer = safe_load(run_command(
            [u"counterfactual", u"--config", self.config.path, u"--seed",
             u"1", u"0", u"1"]))
        self.assertEqual(1, answer[u"seed"])

    def test_effect_matches_effects(self):
        """
        A unit's individual effect is its entry in the potential outcomes
        the same seed's model gives the whole dataset.
        """
        config = load_run_config(self.config)
        data = load_dataset(config.data, load_column_spec(config.columns),
                            load_dag(config.dag))
        outcomes = potential_outcomes(
            load_model(model_path(config, 1)), data, config.a1, config.a0,
            1)
        answer = safe_load(run_command(
            [u"counterfactual", u"--config", self.config.path, u"--seed",
             u"1", u"7", u"1"]))
        self.assertEqual(
            (float(individual_effects(outcomes)[7]),
             float(individual_effects(outcomes, True, config.cut)[7])),
            (answer[u"ice"], answer[u"thresholded_ice"]))

    def test_row_out_of_range(self):
        """
        Rows outside the dataset are an error.
        """
        self.assertRaises(
            RowOutOfRange, run_command,
            [u"counterfactual", u"--config", self.config.path,
             str(ROWS), u"1"])

    def test_bad_arguments(self):
        """
        The row must be an integer and the treatment a number.
        """
        self.assertRaises(
            UsageError, CGNFOptions().parseOptions,
            [u"counterfactual", u"--config", self.config.path, u"first",
             u"1"])


class ValidateTests(SynchronousTestCase):
    """
    Tests for ``cgnf validate``.
    """
    def setUp(self):
        self.settings = FilePath(self.mktemp())
        self.settings.setContent(safe_dump(TINY).encode("utf-8"))
        self.output = FilePath(self.mktemp())

    def arguments(self, tolerance, scm=u"binary-interaction"):
        return [u"validate", u"--output", self.output.path, u"--rows",
                str(ROWS), u"--permutations", u"19", u"--tolerance",
                str(tolerance), u"--group-tolerance", str(tolerance),
                u"--train-settings", self.settings.path, scm]

    def checks(self, arguments):
        """
        Run ``arguments`` whatever the verdict.

        :return: The checks of the written report.
        """
        try:
            run_command(arguments)
        except ValidationFailed:
            pass
        return read_json(self.output.child(u"validate.json"))[u"checks"]

    def test_passes(self):
        """
        Within the tolerances every check passes and the report says so.
        """
        run_command(self.arguments(100))
        report = read_json(self.output.child(u"validate.json"))
        self.assertEqual(
            (True, [u"ace", u"backdoor", u"cace", u"consistency",
                    u"distribution", u"strategies"]),
            (report[u"passed"], sorted(report[u"checks"])))

    def test_fails(self):
        """
        A check outside its tolerance fails the validation and the report
        records it.
        """
        self.assertRaises(ValidationFailed, run_command, self.arguments(0))
        report = read_json(self.output.child(u"validate.json"))
        self.assertFalse(report[u"passed"])

    def test_exit_status(self):
        """
        A failed validation exits with status 2 and explains itself on
        standard error.
        """
        sys_module = FakeSysModule(argv=[u"cgnf"] + self.arguments(0))
        runner = CGNFScriptRunner(
            script=CGNFScript(), options=CGNFOptions(sys_module=sys_module),
            reactor=fake_reactor(), sys_module=sys_module)
        runner.log_directory = FilePath(self.mktemp())
        error = self.assertRaises(SystemExit, runner.main)
        self.assertEqual(
            (2, True),
            (error.code,
             u"Validation failed" in sys_module.stderr.getvalue()))

    def test_bad_train_settings(self):
        """
        Invalid training settings are a usage error.
        """
        self.settings.setContent(b"batch_size: 0\n")
        self.assertRaises(UsageError, CGNFOptions().parseOptions,
                          self.arguments(1))

    def test_bad_strategy_seeds(self):
        """
        Strategy seeds must be comma-separated integers.
        """
        self.assertRaises(
            UsageError, CGNFOptions().parseOptions,
            self.arguments(1)[:1] + [u"--strategy-seeds", u"0,one"] +
            self.arguments(1)[1:])

    def test_backdoor_discretized_variant(self):
        """
        With a continuous adjustment set the backdoor estimate comes from a
        sample of the SCM's discretized variant.
        """
        backdoor = self.checks(
            self.arguments(100, u"linear-gaussian"))[u"backdoor"]
        self.assertEqual(
            (u"linear-discrete", True),
            (backdoor[u"scm"], backdoor[u"passed"]))

    def test_backdoor_without_variant(self):
        """
        A backdoor check which cannot be made has no verdict and fails the
        validation.
        """
        scm = FilePath(self.mktemp())
        scm.setContent(b"\n".join(
            line for line in
            fixture_path(u"linear-gaussian").getContent().splitlines()
            if not line.startswith(b"discretized:")))
        error = self.assertRaises(
            ValidationFailed, run_command, self.arguments(100, scm.path))
        backdoor = read_json(
            self.output.child(u"validate.json"))[u"checks"][u"backdoor"]
        self.assertEqual(
            (None, True, True),
            (backdoor[u"passed"], u"skipped" in backdoor,
             u"backdoor" in str(error)))

    def test_unknown_variant(self):
        """
        A discretized variant which is not a shipped SCM is a usage error.
        """
        scm = FilePath(self.mktemp())
        scm.setContent(fixture_path(u"linear-gaussian").getContent().replace(
            b"discretized: linear-discrete", b"discretized: no-such-scm"))
        self.assertRaises(UsageError, CGNFOptions().parseOptions,
                          self.arguments(1, scm.path))

    def test_strategies(self):
        """
        Each strategy seed trains its own model, and the observed strategy's
        histogram is the observed outcomes' for all of them.
        """
        strategies = self.checks(
            self.arguments(100)[:1] + [u"--strategy-seeds", u"0,5"] +
            self.arguments(100)[1:])[u"strategies"]
        data = sample_scm(load_fixture(u"binary-interaction"), ROWS, 0)
        self.assertEqual(
            ([u"0", u"5"], True,
             np.bincount(data.values[:, 2].astype(int), minlength=3).tolist(),
             True),
            (sorted(strategies[u"seeds"]),
             strategies[u"observed_histogram_stable"],
             strategies[u"observed_histogram"], strategies[u"passed"]))


def strategy_outcomes(y1, y0, observed_treatment, observed_outcome,
                      groups=None):
    return PotentialOutcomes(
        y1=y1, y0=y0, a1=1, a0=0, observed_treatment=observed_treatment,
        observed_outcome=observed_outcome, groups=groups, cardinality=8)


class StrategiesCheckTests(SynchronousTestCase):
    """
    Tests for ``_strategies_check``.
    """
    def test_ordered(self):
        """
        When the model agrees with what was observed, personalizing per unit
        does no worse than per group, nor per group than treating everyone
        alike.
        """
        y1 = [1, 5, 2, 6]
        y0 = [3, 4, 2, 7]
        po = strategy_outcomes(y1, y0, [1, 0, 1, 0], [1, 4, 2, 7],
                               [u"north", u"north", u"south", u"south"])
        check = _strategies_check([(0, po), (1, po)], cut=3, slack=0)
        self.assertEqual(
            (True, True, 0.05, 3.25),
            (check[u"passed"], check[u"observed_histogram_stable"],
             check[u"slack"],
             check[u"seeds"][u"1"][u"mean_outcome"][StrategyKind.TSI]))

    def test_disordered(self):
        """
        A model whose outcome at the observed treatment disagrees with the
        observation can make per-unit decisions worse than treating
        everyone; the check fails.
        """
        po = strategy_outcomes([5, 5], [0, 0], [0, 0], [7, 7])
        check = _strategies_check([(0, po)], cut=3, slack=0)
        self.assertEqual(
            (False, False),
            (check[u"seeds"][u"0"][u"ordered"], check[u"passed"]))

    def test_slack(self):
        """
        A disorder within the slack passes.
        """
        po = strategy_outcomes([5, 5], [0, 0], [0, 0], [7, 7])
        self.assertTrue(
            _strategies_check([(0, po)], cut=3, slack=10)[u"passed"])

    def test_unstable_observed_histogram(self):
        """
        Models of different seeds replaying different observed outcomes
        fail the check.
        """
        first = strategy_outcomes([1, 1], [2, 2], [1, 0], [1, 2])
        second = strategy_outcomes([1, 1], [2, 2], [1, 0], [1, 1])
        check = _strategies_check([(0, first), (1, second)], cut=3, slack=0)
        self.assertEqual(
            (False, False),
            (check[u"observed_histogram_stable"], check[u"passed"]))
