# Copyright cgnf developers.  See LICENSE file for details.

"""
Helpers for testing gradients against finite differences.
"""

import numpy as np


def central_differences(function, arrays, h=1e-5):
    """
    Estimate the gradient of a scalar function by central differences.

    :param function: Called with no arguments; reads ``arrays`` and returns a
        scalar.
    :param list arrays: Arrays which are perturbed in place, one entry at a
        time, and restored afterwards.
    :param float h: Step size.

    :return: A ``list`` of gradient arrays aligned with ``arrays``.
    """
    gradients = []
    for array in arrays:
        gradient = np.zeros_like(array)
        flat = array.reshape(-1)
        for k in range(flat.size):
            original = flat[k]
            flat[k] = original + h
            upper = float(function())
            flat[k] = original - h
            lower = float(function())
            flat[k] = original
            gradient.reshape(-1)[k] = (upper - lower) / (2 * h)
        gradients.append(gradient)
    return gradients


def relative_error(analytic, numeric):
    """
    :return: The largest absolute difference between the two gradient lists,
        relative to the largest numeric gradient entry.
    """
    difference = max(np.max(np.abs(a - n)) for a, n in zip(analytic, numeric))
    scale = max(np.max(np.abs(n)) for n in numeric)
    return difference / max(scale, 1e-8)
