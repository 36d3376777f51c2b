# Copyright cgnf developers.  See LICENSE file for details.

"""
Causal graphical normalizing flows: a graphical conditioner per variable and
a strictly monotonic integration-based transformer, giving an invertible map
between units and their exogenous noise.
"""

from ._model import (
    FlowError, DimensionMismatch, RootNotBracketed, FlowModel, make_flow,
    transform, inverse, log_density, log_density_terms, sample, mutilated,
    negative_log_likelihood, DELTA, CONTEXT_WIDTH, QUADRATURE_NODES,
)
from ._quadrature import clenshaw_curtis

__all__ = [
    "FlowError", "DimensionMismatch", "RootNotBracketed", "FlowModel",
    "make_flow", "transform", "inverse", "log_density", "log_density_terms",
    "sample", "mutilated", "negative_log_likelihood", "DELTA",
    "CONTEXT_WIDTH", "QUADRATURE_NODES", "clenshaw_curtis",
]
