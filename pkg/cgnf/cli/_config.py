# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.cli.test.test_config -*-

"""
Parsing and validation of run configuration files.

A run configuration is a YAML mapping::

    dag: poverty.cdag
    data: poverty.csv
    columns: columns.json
    models: models
    output: reports
    seeds: [0, 1, 2, 3, 4]
    strategies: [TS0, TS1, TSOb, TSC, TSI, TSIt]
    epsilon: 0.05
    a1: 1
    a0: 0
    cut: 1
    lower_is_better: true
    interventional_draws: 0
    train:
      max_epochs: 100
      learning_rate: 0.0003

Relative paths are resolved against the directory holding the file.
"""

import os

from characteristic import attributes

from twisted.python.filepath import FilePath

from yaml import safe_load
from yaml.error import YAMLError

from ..causal import CUT, DEFAULT_EPSILON, StrategyKind
from ..train import TrainConfig


__all__ = [
    "ConfigurationError", "RunConfig", "DEFAULT_SEEDS", "parse_run_config",
    "load_run_config", "model_path",
]


DEFAULT_SEEDS = (0, 1, 2, 3, 4)

_PATHS = (u"dag", u"data", u"columns", u"models", u"output")

_REQUIRED_FILES = (u"dag", u"data", u"columns")

_KEYS = frozenset(_PATHS) | frozenset([
    u"seeds", u"strategies", u"epsilon", u"a1", u"a0", u"cut",
    u"lower_is_better", u"interventional_draws", u"train"])


class ConfigurationError(Exception):
    """
    Some part of the supplied configuration was wrong.

    The exception message will include some details about what.
    """


@attributes(["dag", "data", "columns", "models", "output", "train",
             "strategies", "epsilon", "seeds", "a1", "a0", "cut",
             "lower_is_better", "interventional_draws"],
            defaults=dict(strategies=StrategyKind.ALL,
                          epsilon=DEFAULT_EPSILON, seeds=DEFAULT_SEEDS,
                          a1=1, a0=0, cut=CUT, lower_is_better=True,
                          interventional_draws=0))
class RunConfig(object):
    """
    Everything a ``cgnf`` sub-command needs to know about a run.

    :ivar FilePath dag: The ``.cdag`` file.
    :ivar FilePath data: The dataset CSV file.
    :ivar FilePath columns: The column-spec file.
    :ivar FilePath models: Directory holding one model file per seed.
    :ivar FilePath output: Directory reports are written to.
    :ivar TrainConfig train: Training settings; its seed is replaced by each
        run seed.
    :ivar tuple strategies: ``StrategyKind`` values to evaluate.
    :ivar float epsilon: Neutrality threshold of the strategies.
    :ivar tuple seeds: Distinct run seeds.
    :ivar float a1: The treatment value encouraging means.
    :ivar float a0: The treatment value discouraging means.
    :ivar int cut: Outcomes above ``cut`` count as bad.
    :ivar bool lower_is_better: The outcome direction.
    :ivar int interventional_draws: Base-noise draws for the interventional
        average effect; ``0`` skips it.
    """
    def __init__(self):
        """
        :raises ConfigurationError: If a setting is invalid or a referenced
            input file does not exist.
        """
        for name in _REQUIRED_FILES:
            path = getattr(self, name)
            if not path.isfile():
                raise ConfigurationError(
                    "No {name} file exists at {path}".format(
                        name=name, path=path.path))
        self.seeds = tuple(self.seeds)
        if not self.seeds:
            raise ConfigurationError("At least one seed is required.")
        for seed in self.seeds:
            if isinstance(seed, bool) or not isinstance(seed, int):
                raise ConfigurationError(
                    "Seeds must be integers, got {seed!r}.".format(seed=seed))
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigurationError(
                "Seeds must be distinct, got {seeds!r}.".format(
                    seeds=list(self.seeds)))
        self.strategies = tuple(self.strategies)
        unknown = [kind for kind in self.strategies
                   if kind not in StrategyKind.ALL]
        if unknown or not self.strategies:
            raise ConfigurationError(
                "Strategies must be a non-empty list of {known}, "
                "got {strategies!r}.".format(
                    known=u", ".join(StrategyKind.ALL),
                    strategies=list(self.strategies)))
        if not self.epsilon >= 0:
            raise ConfigurationError(
                "Neutrality threshold must be non-negative, "
                "got {epsilon!r}.".format(epsilon=self.epsilon))
        if self.interventional_draws < 0:
            raise ConfigurationError(
                "Interventional draws cannot be negative.")


def model_path(config, seed):
    """
    :return: The ``FilePath`` of the model file trained with ``seed``.
    """
    return config.models.child(u"model-%d.cgnf" % (seed,))


def _check_type(value, types, description):
    """
    :raises ConfigurationError: If ``value`` is not of type in ``types``.
    """
    if (not isinstance(value, types) or
            (isinstance(value, bool) and bool not in types)):
        raise ConfigurationError(
            "{description}; got type '{type}'.".format(
                description=description, type=type(value).__name__))


def _train_config(raw):
    if raw is None:
        raw = {}
    _check_type(raw, (dict,), "Training settings must be a mapping")
    try:
        return TrainConfig(**raw)
    except TypeError as e:
        raise ConfigurationError("Unknown training setting: {error}".format(
            error=e))
    except ValueError as e:
        raise ConfigurationError(
            "Invalid training settings: {error}".format(error=e))


def parse_run_config(raw, base, overrides=None):
    """
    Validate a run configuration.

    :param dict raw: The configuration as loaded from YAML, or ``None``.
    :param FilePath base: The directory relative paths are resolved from.
    :param dict overrides: Settings replacing those of ``raw``; ``None``
        values are ignored.

    :raises ConfigurationError: If the configuration is invalid.

    :return: A ``RunConfig``.
    """
    if raw is None:
        raw = {}
    _check_type(raw, (dict,), "Run configuration must be a mapping")
    settings = dict(raw)
    for key, value in (overrides or {}).items():
        if value is not None:
            settings[key] = value
    unknown = set(settings) - _KEYS
    if unknown:
        raise ConfigurationError(
            "Unrecognized run configuration keys: {keys}".format(
                keys=u", ".join(sorted(unknown))))
    settings.setdefault(u"models", u"models")
    settings.setdefault(u"output", u"reports")
    for name in _PATHS:
        if name not in settings:
            raise ConfigurationError(
                "Run configuration needs a '{name}' path.".format(name=name))
        _check_type(settings[name], (str,),
                    "The '{name}' path must be a string".format(name=name))
        settings[name] = FilePath(os.path.join(base.path, settings[name]))
    for name, types in [(u"seeds", (list, tuple)),
                        (u"strategies", (list, tuple)),
                        (u"epsilon", (int, float)),
                        (u"a1", (int, float)),
                        (u"a0", (int, float)),
                        (u"cut", (int,)),
                        (u"lower_is_better", (bool,)),
                        (u"interventional_draws", (int,))]:
        if name in settings:
            _check_type(settings[name], types,
                        "'{name}' has the wrong type".format(name=name))
    settings[u"train"] = _train_config(settings.get(u"train"))
    return RunConfig(**dict((str(key), value)
                            for key, value in settings.items()))


def load_run_config(path, overrides=None):
    """
    Read and validate a run configuration file.

    :param FilePath path: The YAML file, or ``None`` to configure the run from
        ``overrides`` alone, resolving paths from the working directory.
    :param dict overrides: As for ``parse_run_config``.

    :raises ConfigurationError: If the file is missing, is not YAML or holds
        an invalid configuration.

    :return: A ``RunConfig``.
    """
    if path is None:
        return parse_run_config(None, FilePath(u"."), overrides)
    if not path.isfile():
        raise ConfigurationError(
            "No configuration file exists at {path}".format(path=path.path))
    try:
        raw = safe_load(path.getContent())
    except YAMLError as e:
        raise ConfigurationError(
            "Run configuration at {path} could not be parsed as YAML:\n\n"
            "{error}".format(path=path.path, error=e))
    return parse_run_config(raw, path.parent(), overrides)
