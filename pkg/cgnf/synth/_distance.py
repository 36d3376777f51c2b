# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.synth.test.test_distance -*-

"""
Two-sample energy distance, for checking that a model's samples follow the
distribution of held-out data.
"""

import numpy as np

from characteristic import attributes


__all__ = ["EnergyTest", "energy_distance", "energy_test"]


_CHUNK = 256


def _distances(x, y):
    """
    :return: ``(n, m)`` Euclidean distances between the rows of ``x`` and
        ``y``.
    """
    result = np.empty((len(x), len(y)))
    for start in range(0, len(x), _CHUNK):
        block = x[start:start + _CHUNK]
        result[start:start + _CHUNK] = np.sqrt(np.sum(
            (block[:, None, :] - y[None, :, :]) ** 2, axis=-1))
    return result


def _mean_distance(x, y):
    total = 0.0
    for start in range(0, len(x), _CHUNK):
        total += _distances(x[start:start + _CHUNK], y).sum()
    return total / (len(x) * len(y))


def _statistic(distances, first, second):
    return (2 * distances[np.ix_(first, second)].mean() -
            distances[np.ix_(first, first)].mean() -
            distances[np.ix_(second, second)].mean())


def energy_distance(x, y):
    """
    ``2 E|X - Y| - E|X - X'| - E|Y - Y'|`` estimated from two samples.

    :param x: ``(n, d)`` sample.
    :param y: ``(m, d)`` sample.

    :return: A non-negative ``float``, zero for identical samples.
    """
    x = np.asarray(x, dtype=np.float64).reshape(len(x), -1)
    y = np.asarray(y, dtype=np.float64).reshape(len(y), -1)
    return float(2 * _mean_distance(x, y) - _mean_distance(x, x) -
                 _mean_distance(y, y))


@attributes(["statistic", "p_value", "threshold"])
class EnergyTest(object):
    """
    :ivar float statistic: The energy distance of the two samples.
    :ivar float p_value: Share of relabelled samples at least as distant.
    :ivar float threshold: The 95th percentile of the relabelled distances.
    """

    @property
    def rejected(self):
        """
        Whether the samples differ at the 5% level.
        """
        return self.statistic > self.threshold


def energy_test(x, y, permutations=199, seed=0, max_points=1000):
    """
    Permutation test of whether ``x`` and ``y`` come from one distribution.

    :param x: ``(n, d)`` sample.
    :param y: ``(m, d)`` sample.
    :param int permutations: Random relabellings of the pooled sample.
    :param int seed: Seed of the subsampling and the relabellings.
    :param int max_points: Each sample is subsampled to at most this many
        rows.

    :return: An ``EnergyTest``.
    """
    rng = np.random.default_rng(seed)
    x = np.asarray(x, dtype=np.float64).reshape(len(x), -1)
    y = np.asarray(y, dtype=np.float64).reshape(len(y), -1)
    if len(x) > max_points:
        x = x[rng.choice(len(x), max_points, replace=False)]
    if len(y) > max_points:
        y = y[rng.choice(len(y), max_points, replace=False)]
    pooled = np.concatenate([x, y])
    distances = _distances(pooled, pooled)
    n = len(x)
    labels = np.arange(len(pooled))
    statistic = _statistic(distances, labels[:n], labels[n:])
    null = np.empty(permutations)
    for k in range(permutations):
        shuffled = rng.permutation(labels)
        null[k] = _statistic(distances, shuffled[:n], shuffled[n:])
    return EnergyTest(
        statistic=float(statistic),
        p_value=float((1 + np.count_nonzero(null >= statistic)) /
                      (1.0 + permutations)),
        threshold=float(np.percentile(null, 95)))
