# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.cli.test.test_report -*-

"""
Report tables and documents built from per-seed results, and the writers
that put them on disk.

Report files and their columns:

``metrics.json``
    ``seeds``: ``seed``, ``train_nll``, ``validation_nll``, ``test_nll``,
    ``best_epoch``, ``epochs`` per seed; ``test_nll``: ``mean``, ``std``.
``ace.json``
    ``a1``, ``a0`` and, for ``ace``, ``thresholded_ace`` and optionally
    ``interventional_ace``: ``per_seed`` (``seed``, ``estimate``,
    ``std_error``, ``n_units``), ``mean``, ``std``.
``cace.csv``
    ``group``, ``seed_<seed>`` per seed, ``mean``, ``std``,
    ``includes_zero``.
``histogram.csv``
    ``strategy``, ``seed``, ``degree``, ``count``.
``advisability.csv``
    ``strategy``, ``seed``, ``encouraged``, ``discouraged``, ``neutral``.
``mean_outcome.csv``
    ``strategy``, ``seed``, ``mean_outcome``.
``worlds.csv``
    ``group``, ``strategy``, ``seed``, ``mean_outcome``.
``strategies.json``
    Per strategy, ``mean`` and ``std`` over the seeds of ``mean_outcome``,
    ``encouraged``, ``discouraged`` and ``neutral``.

The cross-seed ``std`` is the sample standard deviation, ``0`` for a single
seed.  JSON is written with sorted keys and ``null`` for undefined numbers.
"""

import json

import numpy as np
import pandas as pd

from eliot import Logger

from ._logging import REPORT_WRITTEN


__all__ = [
    "spread", "metrics_document", "ace_document", "cace_frame",
    "histogram_frame", "advisability_frame", "mean_outcome_frame",
    "worlds_frame", "strategies_document", "write_json", "write_csv",
]


_logger = Logger()


def spread(values):
    """
    :param values: Per-seed numbers.
    :return: ``dict`` with the ``mean`` and the sample ``std`` of ``values``.
    """
    values = np.asarray(values, dtype=np.float64)
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return dict(mean=float(np.mean(values)), std=std)


def metrics_document(models):
    """
    :param list models: ``TrainedModel`` per seed, in seed order.
    :return: The content of ``metrics.json``.
    """
    seeds = [dict(seed=trained.seed,
                  train_nll=trained.train_nll,
                  validation_nll=trained.validation_nll,
                  test_nll=trained.test_nll,
                  best_epoch=trained.best_epoch,
                  epochs=len(trained.history))
             for trained in models]
    return dict(seeds=seeds,
                test_nll=spread([entry[u"test_nll"] for entry in seeds]))


def _effect_summary(per_seed):
    entries = [dict(seed=seed, estimate=effect.estimate,
                    std_error=effect.std_error, n_units=effect.n_units)
               for seed, effect in per_seed.items()]
    summary = spread([entry[u"estimate"] for entry in entries])
    summary[u"per_seed"] = entries
    return summary


def ace_document(a1, a0, ace, thresholded_ace, interventional_ace=None):
    """
    :param ace: ``OrderedDict`` of seed to ``EffectEstimate``.
    :param thresholded_ace: Likewise, for the thresholded outcome.
    :param interventional_ace: Likewise, from fresh base-noise draws, or
        ``None``.
    :return: The content of ``ace.json``.
    """
    document = dict(a1=a1, a0=a0, ace=_effect_summary(ace),
                    thresholded_ace=_effect_summary(thresholded_ace))
    if interventional_ace is not None:
        document[u"interventional_ace"] = _effect_summary(interventional_ace)
    return document


def cace_frame(per_seed):
    """
    :param per_seed: ``OrderedDict`` of seed to the group-to-
        ``EffectEstimate`` mapping of that seed.
    :return: The ``cace.csv`` table, one row per group in label order.
    """
    groups = sorted(set(group for effects in per_seed.values()
                        for group in effects))
    columns = [u"group"] + [u"seed_%d" % (seed,) for seed in per_seed]
    rows = []
    for group in groups:
        estimates = [effects[group].estimate if group in effects else np.nan
                     for effects in per_seed.values()]
        present = [value for value in estimates if not np.isnan(value)]
        summary = spread(present)
        low = summary[u"mean"] - summary[u"std"]
        high = summary[u"mean"] + summary[u"std"]
        rows.append([group] + estimates + [
            summary[u"mean"], summary[u"std"], bool(low <= 0 <= high)])
    return pd.DataFrame(
        rows, columns=columns + [u"mean", u"std", u"includes_zero"])


def histogram_frame(evaluations):
    """
    :param evaluations: ``OrderedDict`` of seed to the list of
        ``StrategyEvaluation`` of that seed.
    :return: The ``histogram.csv`` table; strategies without a histogram
        (continuous outcomes) contribute no rows.
    """
    rows = []
    for seed, evaluated in evaluations.items():
        for evaluation in evaluated:
            if evaluation.histogram is None:
                continue
            for degree, count in enumerate(evaluation.histogram.tolist()):
                rows.append([evaluation.kind, seed, degree, count])
    return _sorted(pd.DataFrame(
        rows, columns=[u"strategy", u"seed", u"degree", u"count"]),
        evaluations, [u"degree"])


def advisability_frame(evaluations):
    """
    :return: The ``advisability.csv`` table.
    """
    rows = []
    for seed, evaluated in evaluations.items():
        for evaluation in evaluated:
            shares = evaluation.advisability
            rows.append([evaluation.kind, seed, shares.encouraged,
                         shares.discouraged, shares.neutral])
    return _sorted(pd.DataFrame(
        rows, columns=[u"strategy", u"seed", u"encouraged", u"discouraged",
                       u"neutral"]), evaluations, [])


def mean_outcome_frame(evaluations):
    """
    :return: The ``mean_outcome.csv`` table.
    """
    rows = [[evaluation.kind, seed, evaluation.mean_outcome]
            for seed, evaluated in evaluations.items()
            for evaluation in evaluated]
    return _sorted(pd.DataFrame(
        rows, columns=[u"strategy", u"seed", u"mean_outcome"]),
        evaluations, [])


def _sorted(frame, evaluations, within):
    """
    Order rows by strategy (in evaluation order), then seed.
    """
    if frame.empty:
        return frame
    order = []
    for evaluated in evaluations.values():
        for evaluation in evaluated:
            if evaluation.kind not in order:
                order.append(evaluation.kind)
    rank = frame[u"strategy"].map(dict((kind, i)
                                       for i, kind in enumerate(order)))
    return frame.assign(_rank=rank).sort_values(
        [u"_rank", u"seed"] + within, kind="mergesort"
    ).drop(columns=[u"_rank"]).reset_index(drop=True)


def worlds_frame(worlds):
    """
    :param worlds: ``OrderedDict`` of seed to the result of
        ``strategy_worlds`` for that seed.
    :return: The ``worlds.csv`` table.
    """
    rows = [[group, strategy, seed, mean]
            for seed, by_group in worlds.items()
            for group, by_strategy in by_group.items()
            for strategy, mean in by_strategy.items()]
    frame = pd.DataFrame(
        rows, columns=[u"group", u"strategy", u"seed", u"mean_outcome"])
    if frame.empty:
        return frame
    return frame.sort_values([u"group", u"seed"], kind="mergesort"
                             ).reset_index(drop=True)


def strategies_document(mean_outcomes, advisability):
    """
    Cross-seed summaries recomputed from the per-seed tables.

    :param pandas.DataFrame mean_outcomes: The ``mean_outcome.csv`` table.
    :param pandas.DataFrame advisability: The ``advisability.csv`` table.
    :return: The content of ``strategies.json``.
    """
    document = {}
    for strategy, rows in mean_outcomes.groupby(u"strategy", sort=False):
        document[strategy] = dict(mean_outcome=spread(rows[u"mean_outcome"]))
    for strategy, rows in advisability.groupby(u"strategy", sort=False):
        entry = document.setdefault(strategy, {})
        for decision in (u"encouraged", u"discouraged", u"neutral"):
            entry[decision] = spread(rows[decision])
    return document


def _plain(value):
    """
    Convert ``value`` to JSON-compatible Python values, with ``None`` for
    undefined numbers.
    """
    if isinstance(value, dict):
        return dict((str(key), _plain(item)) for key, item in value.items())
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else None
    return value


def write_json(document, path, logger=_logger):
    """
    Write ``document`` as JSON with sorted keys.

    :param FilePath path: The destination.
    """
    path.setContent(json.dumps(
        _plain(document), sort_keys=True, indent=2, allow_nan=False
    ).encode("utf-8") + b"\n")
    REPORT_WRITTEN(path=path.path).write(logger)


def write_csv(frame, path, logger=_logger):
    """
    Write ``frame`` as CSV with a header row and no index.

    :param pandas.DataFrame frame: The table.
    :param FilePath path: The destination.
    """
    path.setContent(frame.to_csv(index=False).encode("utf-8"))
    REPORT_WRITTEN(path=path.path).write(logger)
