# Copyright cgnf developers.  See LICENSE file for details.

"""
Models with known counterfactuals for tests.
"""

from ..flow.testtools import linear_gaussian_flow
from ..train import TrainConfig, TrainedModel


# Over ``CONFOUNDED_DAG``: y = c + 0.5 o - 2 a + z.
COEFFICIENTS = {(u"C", u"Y"): 1.0, (u"A", u"Y"): -2.0, (u"O", u"Y"): 0.5,
                (u"C", u"A"): 0.2}


def linear_trained_model(data, scales=None, coefficients=None):
    """
    Wrap a ``linear_gaussian_flow`` over ``data``'s DAG as a
    ``TrainedModel``.

    :param Dataset data: Supplies the DAG (with roles) and column specs.
    :param dict scales: As for ``linear_gaussian_flow``.
    :param dict coefficients: As for ``linear_gaussian_flow``.
    """
    return TrainedModel(
        model=linear_gaussian_flow(data.dag, scales or {}, coefficients or {}),
        specs=data.specs, config=TrainConfig(), train_nll=0.0,
        validation_nll=0.0, test_nll=0.0, best_epoch=1)
