# Copyright cgnf developers.  See LICENSE file for details.

"""
Dense float64 math for the flow: a reverse-mode gradient tape, feed-forward
networks and the AdamW optimizer.
"""

from ._tape import (
    NumericError, ShapeMismatch, NonFiniteInput, LossNotScalar,
    NodeNotOnTape, NonFiniteGradient, GradientTape, Variable, value_of,
)
from ._mlp import Mlp, make_mlp, mlp_forward, TANH, LINEAR
from ._adamw import AdamWState, AdamW, adamw_step

__all__ = [
    "NumericError", "ShapeMismatch", "NonFiniteInput", "LossNotScalar",
    "NodeNotOnTape", "NonFiniteGradient", "GradientTape", "Variable",
    "value_of", "Mlp", "make_mlp", "mlp_forward", "TANH", "LINEAR",
    "AdamWState", "AdamW", "adamw_step",
]
