# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.cli.test.test_script -*-

"""
The command-line ``cgnf`` tool.
"""

from collections import OrderedDict

import numpy as np

from eliot import Logger

from twisted.python.filepath import FilePath
from twisted.python.usage import Options, UsageError

from yaml import safe_dump, safe_load
from yaml.error import YAMLError

from zope.interface import implementer

from ..causal import (
    CUT, DEFAULT_EPSILON, StrategyKind, TreatmentStrategy, abduct,
    predict_under, counterfactual_outcome,
    potential_outcomes, individual_effects, ace_from_outcomes,
    cace_from_outcomes,
    estimate_interventional_ace, assign_from_outcomes, evaluate_strategy,
    strategy_worlds,
)
from ..common.script import (
    cgnf_standard_options, ICommandLineScript, CGNFScriptRunner,
)
from ..flow import sample
from ..graph import NodeRole, load_dag, role_node, serialize_dag
from ..synth import (
    FIXTURE_NAMES, MONTE_CARLO_DRAWS, SynthError, ContinuousAdjustment,
    PositivityViolation, load_fixture, load_scm, sample_scm, oracle_effects,
    backdoor_ace, energy_test,
)
from ..train import (
    TrainConfig, load_column_spec, load_dataset, write_dataset,
    write_column_spec, train, save_model, load_model, dequantize_units,
    quantize, quantize_units,
)
from ._config import ConfigurationError, load_run_config, model_path
from ._logging import COMMAND, SEED_STARTED
from ._report import (
    metrics_document, ace_document, cace_frame, histogram_frame,
    advisability_frame, mean_outcome_frame, worlds_frame,
    strategies_document, write_json, write_csv,
)


__all__ = [
    "CommandError", "ModelMissing", "RowOutOfRange", "ValidationFailed",
    "cgnf_run_options", "CGNFOptions", "CGNFScript", "cgnf_main",
]


class CommandError(Exception):
    """
    A sub-command could not do its work.
    """


class ModelMissing(CommandError):
    """
    No trained model exists for a run seed.
    """


class RowOutOfRange(CommandError):
    """
    A unit selector does not name a row of the dataset.
    """


class ValidationFailed(CommandError):
    """
    A check of ``cgnf validate`` was outside its tolerance.
    """


# Model samples compared with the data by the distribution check.
_DISTRIBUTION_ROWS = 1000


def _integer_list(text):
    return [int(value) for value in text.split(u",")]


def _word_list(text):
    return [value.strip() for value in text.split(u",") if value.strip()]


def cgnf_run_options(cls):
    """
    A class decorator adding the run configuration file and its overriding
    flags to a sub-command's options.  After parsing, ``self["run"]`` holds
    the validated ``RunConfig``.

    :param cls: The class to decorate.
    :return: The decorated class.
    """
    original_parameters = getattr(cls, "optParameters", [])
    cls.optParameters = original_parameters + [
        ["config", "c", None, "The YAML run configuration file."],
        ["dag", None, None, "The .cdag file of the causal DAG."],
        ["data", None, None, "The dataset CSV file."],
        ["columns", None, None, "The JSON column-spec file."],
        ["models", None, None, "The directory of the model files."],
        ["output", None, None, "The directory reports are written to."],
        ["seeds", None, None, "Comma-separated run seeds.", _integer_list],
        ["strategies", None, None,
         "Comma-separated treatment strategies.", _word_list],
        ["epsilon", None, None, "Neutrality threshold of the strategies.",
         float],
        ["a1", None, None, "The treatment value encouraging means.", float],
        ["a0", None, None, "The treatment value discouraging means.", float],
    ]

    original_postOptions = cls.postOptions

    def postOptions(self):
        overrides = dict(
            (key, self[key]) for key in (
                u"dag", u"data", u"columns", u"models", u"output", u"seeds",
                u"strategies", u"epsilon", u"a1", u"a0"))
        config = self["config"]
        if config is not None:
            config = FilePath(config)
        try:
            self["run"] = load_run_config(config, overrides)
        except ConfigurationError as e:
            raise UsageError(str(e))
        original_postOptions(self)

    cls.postOptions = postOptions

    return cls


def _load_data(config):
    """
    :return: The ``Dataset`` a run configuration names.
    """
    dag = load_dag(config.dag)
    specs = load_column_spec(config.columns)
    return load_dataset(config.data, specs, dag)


def _load_models(config):
    """
    :raises ModelMissing: If a seed has no model file.

    :return: ``OrderedDict`` of seed to ``TrainedModel``.
    """
    models = OrderedDict()
    for seed in config.seeds:
        path = model_path(config, seed)
        if not path.isfile():
            raise ModelMissing(
                "No model for seed {seed} at {path}; run 'cgnf train' "
                "first.".format(seed=seed, path=path.path))
        models[seed] = load_model(path)
    return models


def _directory(path):
    """
    :return: ``path``, created if it did not exist.
    """
    if not path.isdir():
        path.makedirs()
    return path


@cgnf_run_options
class TrainOptions(Options):
    """
    Command line options for ``cgnf train``.
    """

    longdesc = """Train one model per run seed and write metrics.json.

    Model files are written to the models directory as model-<seed>.cgnf.
    """

    def run(self, stdout, logger):
        config = self["run"]
        data = _load_data(config)
        _directory(config.models)
        trained_models = []
        for seed in config.seeds:
            SEED_STARTED(name=u"train", seed=seed).write(logger)
            settings = config.train.snapshot()
            settings[u"seed"] = seed
            trained = train(data, data.dag, TrainConfig(**settings))
            save_model(trained, model_path(config, seed))
            trained_models.append(trained)
        write_json(metrics_document(trained_models),
                   _directory(config.output).child(u"metrics.json"), logger)


@cgnf_run_options
class EffectsOptions(Options):
    """
    Command line options for ``cgnf effects``.
    """

    longdesc = """Estimate the average and group causal effects of every
    seed's model and write ace.json and, with a group key, cace.csv.
    """

    def run(self, stdout, logger):
        config = self["run"]
        data = _load_data(config)
        models = _load_models(config)
        ace, thresholded, interventional, cace = (
            OrderedDict(), OrderedDict(), OrderedDict(), OrderedDict())
        for seed, trained in models.items():
            SEED_STARTED(name=u"effects", seed=seed).write(logger)
            outcomes = potential_outcomes(
                trained, data, config.a1, config.a0, seed)
            ace[seed] = ace_from_outcomes(outcomes)
            thresholded[seed] = ace_from_outcomes(
                outcomes, thresholded=True, cut=config.cut)
            if outcomes.groups is not None:
                cace[seed] = cace_from_outcomes(outcomes)
            if config.interventional_draws:
                interventional[seed] = estimate_interventional_ace(
                    trained, config.a1, config.a0,
                    config.interventional_draws, seed, logger=logger)
        output = _directory(config.output)
        write_json(
            ace_document(config.a1, config.a0, ace, thresholded,
                         interventional or None),
            output.child(u"ace.json"), logger)
        if cace:
            write_csv(cace_frame(cace), output.child(u"cace.csv"), logger)


@cgnf_run_options
class StrategiesOptions(Options):
    """
    Command line options for ``cgnf strategies``.
    """

    longdesc = """Evaluate the treatment strategies with every seed's model
    and write histogram.csv, advisability.csv, mean_outcome.csv,
    strategies.json and, with a group key, worlds.csv.
    """

    def run(self, stdout, logger):
        config = self["run"]
        data = _load_data(config)
        models = _load_models(config)
        evaluations, worlds = OrderedDict(), OrderedDict()
        for seed, trained in models.items():
            SEED_STARTED(name=u"strategies", seed=seed).write(logger)
            outcomes = potential_outcomes(
                trained, data, config.a1, config.a0, seed)
            evaluated = []
            for kind in config.strategies:
                strategy = TreatmentStrategy(
                    kind=kind, epsilon=config.epsilon,
                    lower_is_better=config.lower_is_better, cut=config.cut)
                evaluated.append(evaluate_strategy(
                    outcomes, assign_from_outcomes(outcomes, strategy)))
            evaluations[seed] = evaluated
            if outcomes.groups is not None:
                worlds[seed] = strategy_worlds(outcomes, evaluated)
        output = _directory(config.output)
        advisability = advisability_frame(evaluations)
        mean_outcomes = mean_outcome_frame(evaluations)
        write_csv(histogram_frame(evaluations),
                  output.child(u"histogram.csv"), logger)
        write_csv(advisability, output.child(u"advisability.csv"), logger)
        write_csv(mean_outcomes, output.child(u"mean_outcome.csv"), logger)
        write_json(strategies_document(mean_outcomes, advisability),
                   output.child(u"strategies.json"), logger)
        if worlds:
            write_csv(worlds_frame(worlds), output.child(u"worlds.csv"),
                      logger)


@cgnf_run_options
class CounterfactualOptions(Options):
    """
    Command line options for ``cgnf counterfactual``.
    """

    longdesc = """Answer a counterfactual question about one unit: what
    would its outcome have been under another treatment?

    Parameters:

    * row: The zero-based dataset row of the unit.

    * treatment: The treatment value to set.
    """

    synopsis = "<row> <treatment>"

    optParameters = [
        ["seed", None, None, "The run seed whose model answers; defaults to "
         "the first seed.", int],
    ]

    def parseArgs(self, row, treatment):
        try:
            self["row"] = int(row)
            self["treatment"] = float(treatment)
        except ValueError:
            raise UsageError(
                "Row must be an integer and treatment a number, got "
                "{row!r} and {treatment!r}.".format(
                    row=row, treatment=treatment))

    def run(self, stdout, logger):
        config = self["run"]
        seed = self["seed"]
        if seed is None:
            seed = config.seeds[0]
        path = model_path(config, seed)
        if not path.isfile():
            raise ModelMissing("No model for seed {seed} at {path}".format(
                seed=seed, path=path.path))
        trained = load_model(path)
        data = _load_data(config)
        row = self["row"]
        if not 0 <= row < data.size:
            raise RowOutOfRange(
                "Row {row} is outside the dataset's {size} rows.".format(
                    row=row, size=data.size))
        unit = data.values[row]
        # The unit's dequantization noise is its row of the whole dataset's,
        # as for the effects and strategies of the same seed.
        x = dequantize_units(trained.specs, data.values, seed,
                             truncate=True)[row]
        z = abduct(trained, x)
        nodes = list(trained.dag.nodes)
        outcome = role_node(trained.dag, NodeRole.OUTCOME)
        outcomes = potential_outcomes(trained, data, config.a1, config.a0,
                                      seed)
        ice = individual_effects(outcomes)[row]
        thresholded = individual_effects(outcomes, True, config.cut)[row]
        answer = dict(
            row=row, seed=seed,
            observed=dict(zip(nodes, unit.tolist())),
            noise=dict(zip(nodes, z.tolist())),
            noise_norm=float(np.linalg.norm(z)),
            treatment=self["treatment"],
            observed_outcome=float(unit[nodes.index(outcome)]),
            potential_outcome=counterfactual_outcome(
                trained, x, self["treatment"]),
            a1=config.a1, a0=config.a0,
            ice=float(ice),
            thresholded_ice=float(thresholded))
        stdout.write(safe_dump(answer, default_flow_style=False))


class _ScmArgument(Options):
    """
    Options of sub-commands working on a synthetic SCM, given as the name of
    a shipped fixture or the path of an SCM YAML file.
    """

    optParameters = [
        ["output", "o", ".", "The directory files are written to."],
        ["rows", "n", 20000, "Number of units to sample.", int],
        ["seed", "s", 0, "Seed of the sampled noise.", int],
        ["draws", None, MONTE_CARLO_DRAWS,
         "Monte-Carlo draws of the oracle when no exact method applies.",
         int],
        ["a1", None, 1.0, "The treatment value encouraging means.", float],
        ["a0", None, 0.0, "The treatment value discouraging means.", float],
        ["cut", None, CUT, "Outcomes above the cut count as bad.", int],
    ]

    synopsis = "<fixture name or SCM file>"

    def parseArgs(self, scm):
        self["scm_name"] = scm
        try:
            if scm in FIXTURE_NAMES:
                self["scm"] = load_fixture(scm)
            elif FilePath(scm).isfile():
                self["scm"] = load_scm(FilePath(scm))
            else:
                raise UsageError(
                    "{scm} is neither a fixture ({names}) nor an SCM "
                    "file.".format(scm=scm, names=u", ".join(FIXTURE_NAMES)))
        except SynthError as e:
            raise UsageError(str(e))
        self["variant"] = None
        try:
            if self["scm"].discretized is not None:
                self["variant"] = load_fixture(self["scm"].discretized)
        except SynthError as e:
            raise UsageError(
                "Discretized variant of {scm}: {error}".format(
                    scm=scm, error=e))
        if self["rows"] < 1:
            raise UsageError("At least one row is needed.")


def _effect(estimate):
    return dict(estimate=estimate.estimate, std_error=estimate.std_error)


def _oracle_document(scm, options):
    """
    :return: The content of ``oracle.json``: the true effects of ``scm``.
    """
    plain = oracle_effects(scm, options["a1"], options["a0"],
                           draws=options["draws"], seed=options["seed"])
    thresholded = oracle_effects(
        scm, options["a1"], options["a0"], thresholded=True,
        cut=options["cut"], draws=options["draws"], seed=options["seed"])
    cace = None
    if plain.cace is not None:
        cace = dict((group, _effect(effect))
                    for group, effect in plain.cace.items())
    return dict(method=plain.method, n_draws=plain.n_draws,
                seed=plain.seed, a1=options["a1"], a0=options["a0"],
                cut=options["cut"], ace=_effect(plain.ace),
                thresholded_ace=_effect(thresholded.ace), cace=cace)


class SynthOptions(_ScmArgument):
    """
    Command line options for ``cgnf synth``.
    """

    longdesc = """Sample a dataset from a synthetic SCM and write data.csv,
    columns.json, dag.cdag, oracle.json with its true effects and run.yml,
    a run configuration for the written files.
    """

    def run(self, stdout, logger):
        scm = self["scm"]
        output = _directory(FilePath(self["output"]))
        data = sample_scm(scm, self["rows"], self["seed"])
        write_dataset(data, output.child(u"data.csv"))
        write_column_spec(data.specs, output.child(u"columns.json"))
        output.child(u"dag.cdag").setContent(
            serialize_dag(scm.dag).encode("utf-8") + b"\n")
        write_json(_oracle_document(scm, self), output.child(u"oracle.json"),
                   logger)
        output.child(u"run.yml").setContent(safe_dump(dict(
            dag=u"dag.cdag", data=u"data.csv", columns=u"columns.json",
            a1=self["a1"], a0=self["a0"], cut=self["cut"],
        ), default_flow_style=False).encode("utf-8"))


def _consistency(trained, data, seed):
    """
    Share of units whose outcome, predicted at their own observed
    treatment, equals their observed outcome.
    """
    nodes = list(trained.dag.nodes)
    a_index = nodes.index(role_node(trained.dag, NodeRole.TREATMENT))
    y_index = nodes.index(role_node(trained.dag, NodeRole.OUTCOME))
    x = dequantize_units(trained.specs, data.values, seed, truncate=True)
    predicted = predict_under(trained, abduct(trained, x), x[:, a_index])
    y = predicted[:, y_index]
    y_spec = trained.specs[y_index]
    observed = data.values[:, y_index]
    if y_spec.discrete:
        same = quantize(y, y_spec.cardinality) == observed
    else:
        same = np.isclose(y, observed, rtol=0, atol=1e-6)
    return float(np.mean(same))


def _backdoor_check(options, data, flow_ace):
    """
    Compare the flow's average effect with backdoor adjustment on the
    sampled data or, when the adjustment set is continuous, on a sample of
    the SCM's discretized variant.
    """
    a1, a0 = options["a1"], options["a0"]
    variant = options["variant"]
    source = options["scm_name"]
    try:
        try:
            backdoor = backdoor_ace(data, options["scm"].dag, a1, a0)
        except ContinuousAdjustment:
            if variant is None:
                raise
            source = options["scm"].discretized
            variant_data = sample_scm(variant, options["rows"],
                                      options["seed"])
            backdoor = backdoor_ace(variant_data, variant.dag, a1, a0)
    except (ContinuousAdjustment, PositivityViolation) as e:
        return dict(skipped=str(e), passed=None)
    tolerance = max(3 * backdoor.std_error, options["tolerance"])
    return dict(
        value=backdoor.estimate, std_error=backdoor.std_error,
        expected=flow_ace.estimate, scm=source, tolerance=tolerance,
        passed=bool(abs(backdoor.estimate - flow_ace.estimate) <=
                    tolerance))


def _strategies_check(outcomes_by_seed, cut, slack, epsilon=DEFAULT_EPSILON):
    """
    Check the strategies of models trained with different seeds.

    Lower outcomes being better, each seed's mean outcomes must satisfy
    ``TSI <= TSC + s <= min(TS0, TS1) + 2 * s`` for ``s`` the larger of
    ``slack`` and ``epsilon``; without groups
    ``TSI <= min(TS0, TS1) + 2 * s``.  ``TSOb`` only replays the
    observed units, so its histogram must be the same for every seed.

    :param list outcomes_by_seed: ``(seed, PotentialOutcomes)`` pairs.
    """
    slack = max(slack, epsilon)
    seeds = OrderedDict()
    histograms = []
    for seed, outcomes in outcomes_by_seed:
        means = OrderedDict()
        for kind in StrategyKind.ALL:
            if kind == StrategyKind.TSC and outcomes.groups is None:
                continue
            strategy = TreatmentStrategy(kind=kind, epsilon=epsilon,
                                         lower_is_better=True, cut=cut)
            evaluation = evaluate_strategy(
                outcomes, assign_from_outcomes(outcomes, strategy))
            means[kind] = evaluation.mean_outcome
            if kind == StrategyKind.TSOb:
                histograms.append(
                    None if evaluation.histogram is None
                    else evaluation.histogram.tolist())
        best_constant = min(means[StrategyKind.TS0], means[StrategyKind.TS1])
        group = means.get(StrategyKind.TSC, best_constant + slack)
        seeds[str(seed)] = dict(
            mean_outcome=means,
            ordered=bool(means[StrategyKind.TSI] <= group + slack and
                         group <= best_constant + slack))
    stable = all(histogram == histograms[0] for histogram in histograms)
    return dict(
        seeds=seeds, epsilon=epsilon, slack=slack,
        observed_histogram=histograms[0],
        observed_histogram_stable=stable,
        passed=stable and all(entry[u"ordered"]
                              for entry in seeds.values()))


class ValidateOptions(_ScmArgument):
    """
    Command line options for ``cgnf validate``.
    """

    longdesc = """Check a model trained on a synthetic SCM's data against
    the SCM's true effects and against backdoor adjustment, and write
    validate.json.  Backdoor adjustment runs on the SCM's discretized variant
    when its adjustment set is continuous.  The strategies of models
    trained with --strategy-seeds must rank finer personalization no
    worse.  Exits with status 2 when a check fails or cannot be made.
    """

    optParameters = [
        ["tolerance", None, 0.1,
         "Largest accepted error of the average effect.", float],
        ["group-tolerance", None, 0.15,
         "Largest accepted error of each group effect.", float],
        ["permutations", None, 199,
         "Relabellings of the distribution test.", int],
        ["train-settings", None, None,
         "A YAML mapping of training settings."],
        ["strategy-seeds", None, None,
         "Comma-separated seeds of the models whose strategies are "
         "compared; by default the --seed model and the next one."],
    ]

    optFlags = [
        ["check-distribution", None,
         "Fail when the model's samples are told apart from the data."],
    ]

    def postOptions(self):
        settings = {}
        if self["train-settings"] is not None:
            path = FilePath(self["train-settings"])
            try:
                settings = safe_load(path.getContent()) or {}
            except (IOError, OSError, YAMLError) as e:
                raise UsageError(
                    "Training settings at {path} could not be read: "
                    "{error}".format(path=path.path, error=e))
            if not isinstance(settings, dict):
                raise UsageError("Training settings must be a mapping.")
        if self["strategy-seeds"] is None:
            self["strategy_seeds"] = [self["seed"], self["seed"] + 1]
        else:
            try:
                self["strategy_seeds"] = [
                    int(seed) for seed in self["strategy-seeds"].split(u",")]
            except ValueError:
                raise UsageError(
                    "Strategy seeds must be comma-separated integers.")
        self["train_settings"] = settings
        try:
            self["train"] = TrainConfig(**dict(settings, seed=self["seed"]))
        except (TypeError, ValueError) as e:
            raise UsageError("Invalid training settings: {error}".format(
                error=e))

    def run(self, stdout, logger):
        scm = self["scm"]
        a1, a0, seed = self["a1"], self["a0"], self["seed"]
        data = sample_scm(scm, self["rows"], seed)
        trained = train(data, data.dag, self["train"])
        outcomes = potential_outcomes(trained, data, a1, a0, seed)
        flow_ace = ace_from_outcomes(outcomes)
        truth = oracle_effects(scm, a1, a0, draws=self["draws"], seed=seed)

        checks = OrderedDict()
        consistency = _consistency(trained, data, seed)
        checks[u"consistency"] = dict(
            value=consistency, expected=1.0, passed=consistency == 1.0)
        error = abs(flow_ace.estimate - truth.ace.estimate)
        checks[u"ace"] = dict(
            value=flow_ace.estimate, expected=truth.ace.estimate,
            oracle_method=truth.method, tolerance=self["tolerance"],
            passed=bool(error <= self["tolerance"]))
        checks[u"backdoor"] = _backdoor_check(self, data, flow_ace)
        if truth.cace is not None and outcomes.groups is not None:
            flow_cace = cace_from_outcomes(outcomes)
            groups = OrderedDict()
            for group, effect in truth.cace.items():
                value = (flow_cace[group].estimate if group in flow_cace
                         else None)
                groups[group] = dict(
                    value=value, expected=effect.estimate,
                    passed=value is not None and bool(abs(
                        value - effect.estimate) <= self["group-tolerance"]))
            checks[u"cace"] = dict(
                groups=groups, tolerance=self["group-tolerance"],
                passed=all(entry[u"passed"] for entry in groups.values()))
        samples = quantize_units(
            trained.specs,
            sample(trained.model, min(data.size, _DISTRIBUTION_ROWS), seed))
        distribution = energy_test(samples, data.values,
                                   permutations=self["permutations"],
                                   seed=seed)
        checks[u"distribution"] = dict(
            statistic=distribution.statistic,
            p_value=distribution.p_value,
            threshold=distribution.threshold,
            gating=bool(self["check-distribution"]),
            passed=not distribution.rejected)
        by_seed = []
        for strategy_seed in self["strategy_seeds"]:
            if strategy_seed == seed:
                by_seed.append((seed, outcomes))
                continue
            other = train(data, data.dag, TrainConfig(
                **dict(self["train_settings"], seed=strategy_seed)))
            by_seed.append((strategy_seed, potential_outcomes(
                other, data, a1, a0, strategy_seed)))
        checks[u"strategies"] = _strategies_check(
            by_seed, self["cut"], self["tolerance"])

        # A check without a verdict, such as a skipped one, fails.
        failed = [name for name, check in checks.items()
                  if check[u"passed"] is not True and
                  check.get(u"gating", True)]
        write_json(dict(scm=self["scm_name"], rows=self["rows"], seed=seed,
                        checks=checks, passed=not failed),
                   _directory(FilePath(self["output"])).child(
                       u"validate.json"), logger)
        if failed:
            raise ValidationFailed(
                "Validation failed: {checks}".format(
                    checks=u", ".join(failed)))


@cgnf_standard_options
class CGNFOptions(Options):
    """
    Command line options for ``cgnf``.
    """

    longdesc = """cgnf fits causal normalizing flows to observational data
    and answers interventional and counterfactual questions with them.
    """

    synopsis = "Usage: cgnf [OPTIONS] <command> [COMMAND OPTIONS]"

    subCommands = [
        ["train", None, TrainOptions, "Train one model per run seed."],
        ["effects", None, EffectsOptions,
         "Estimate average and group causal effects."],
        ["strategies", None, StrategiesOptions,
         "Evaluate treatment strategies."],
        ["counterfactual", None, CounterfactualOptions,
         "Answer a counterfactual question about one unit."],
        ["synth", None, SynthOptions,
         "Sample a synthetic dataset with its true effects."],
        ["validate", None, ValidateOptions,
         "Check a trained model against a synthetic SCM."],
    ]

    def postOptions(self):
        if self.subCommand is None:
            raise UsageError("A command is required.")


@implementer(ICommandLineScript)
class CGNFScript(object):
    """
    Run a ``cgnf`` sub-command.
    """
    logger = Logger()

    def main(self, reactor, options):
        """
        See :py:meth:`ICommandLineScript.main` for parameter documentation.
        """
        with COMMAND(self.logger, name=options.subCommand):
            options.subOptions.run(options._sys_module.stdout, self.logger)


def cgnf_main():
    return CGNFScriptRunner(
        script=CGNFScript(),
        options=CGNFOptions()
    ).main()
