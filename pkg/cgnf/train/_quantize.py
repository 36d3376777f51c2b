# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.train.test.test_quantize -*-

"""
Gaussian dequantization of discrete columns and the matching quantization.
"""

import numpy as np

from ..numeric import NonFiniteInput
from ._dataset import NonIntegerInput


__all__ = [
    "NOISE_SCALE", "dequantize", "quantize", "dequantize_units",
    "quantize_units",
]


# Standard deviation of the dequantization noise, variance 1/36.
NOISE_SCALE = 1.0 / 6.0


def _rng(seed):
    return np.random.default_rng(seed)


def dequantize(values, seed, truncate=False):
    """
    Replace every discrete value ``D`` by a draw from ``Normal(D, 1/36)``.

    :param values: Integer-valued array.
    :param seed: An ``int`` seed or a ``numpy.random.Generator``.
    :param bool truncate: Redraw any noise of magnitude ``0.5`` or more, so
        ``quantize`` always recovers ``values``.

    :raises NonIntegerInput: If a value is not an integer.

    :return: A float64 array shaped like ``values``.
    """
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)) or np.any(values != np.round(values)):
        raise NonIntegerInput("Only integer values can be dequantized.")
    rng = _rng(seed)
    noise = rng.normal(0.0, NOISE_SCALE, size=values.shape)
    if truncate:
        outside = np.abs(noise) >= 0.5
        while outside.any():
            noise[outside] = rng.normal(0.0, NOISE_SCALE, size=outside.sum())
            outside = np.abs(noise) >= 0.5
    return values + noise


def quantize(values, cardinality):
    """
    Round half away from zero, then clamp to ``[0, cardinality - 1]``.

    :param values: Float array.
    :param int cardinality: ``N >= 1``.

    :raises NonFiniteInput: If a value is not finite.

    :return: An int64 array shaped like ``values``.
    """
    if cardinality < 1:
        raise ValueError("Cardinality must be at least 1, not %r" % (
            cardinality,))
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise NonFiniteInput("Only finite values can be quantized.")
    rounded = np.sign(values) * np.floor(np.abs(values) + 0.5)
    return np.clip(rounded, 0, cardinality - 1).astype(np.int64)


def dequantize_units(specs, values, seed, truncate=False):
    """
    Dequantize the discrete columns of a ``(n, d)`` matrix.

    Columns are processed left to right from a single generator, so the
    result depends only on ``seed``.

    :param specs: One ``ColumnSpec`` per column.
    :return: A new float64 matrix; continuous columns are copied unchanged.
    """
    rng = _rng(seed)
    result = np.array(values, dtype=np.float64)
    for i, spec in enumerate(specs):
        if spec.discrete:
            result[:, i] = dequantize(result[:, i], rng, truncate)
    return result


def quantize_units(specs, values):
    """
    Quantize the discrete columns of a ``(n, d)`` matrix with the
    cardinalities recorded in ``specs``.

    :return: A new float64 matrix; continuous columns are copied unchanged.
    """
    result = np.array(values, dtype=np.float64)
    for i, spec in enumerate(specs):
        if spec.discrete:
            result[:, i] = quantize(result[:, i], spec.cardinality)
    return result
