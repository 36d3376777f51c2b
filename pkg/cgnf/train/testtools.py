# Copyright cgnf developers.  See LICENSE file for details.

"""
Datasets and models for tests.
"""

import numpy as np

from ..flow import make_flow
from ..graph import parse_dag, NodeRole
from ._dataset import ColumnSpec, ColumnKind, make_dataset
from ._trainer import TrainConfig, TrainedModel


CONFOUNDED_DAG = parse_dag(u"O; C; A; Y; C->A; C->Y; A->Y; O->Y")

CONFOUNDED_SPECS = [
    ColumnSpec(name=u"O", kind=ColumnKind.CONTINUOUS,
               role=NodeRole.OTHER_CAUSE),
    ColumnSpec(name=u"C", kind=ColumnKind.DISCRETE, cardinality=3,
               role=NodeRole.CONFOUNDER),
    ColumnSpec(name=u"A", kind=ColumnKind.DISCRETE, cardinality=2,
               role=NodeRole.TREATMENT),
    ColumnSpec(name=u"Y", kind=ColumnKind.DISCRETE, cardinality=8,
               role=NodeRole.OUTCOME),
    ColumnSpec(name=u"G", group_key=True),
]


def confounded_dataset(n, seed=0):
    """
    Random rows over ``CONFOUNDED_DAG`` with an extra group-key column ``G``
    holding ``north`` or ``south``.

    :return: A ``Dataset``.
    """
    rng = np.random.default_rng(seed)
    c = rng.integers(0, 3, size=n)
    a = (rng.uniform(size=n) < 0.3 + 0.2 * c).astype(int)
    o = rng.normal(size=n)
    y = np.clip(np.round(2 + c - 2 * a + 0.5 * o + rng.normal(size=n)), 0, 7)
    groups = np.where(rng.uniform(size=n) < 0.5, u"north", u"south")
    return make_dataset(
        CONFOUNDED_DAG, CONFOUNDED_SPECS,
        np.stack([o, c, a, y], axis=1), groups)


def untrained_model(dataset, seed=0, **kwargs):
    """
    Wrap a randomly initialized flow over ``dataset``'s DAG as a
    ``TrainedModel``.

    :param kwargs: ``TrainConfig`` settings.
    """
    config = TrainConfig(seed=seed, **kwargs)
    model = make_flow(
        dataset.dag, np.random.default_rng(seed),
        conditioner_widths=config.conditioner_widths,
        transformer_widths=config.transformer_widths,
        context_width=config.context_width)
    return TrainedModel(
        model=model, specs=dataset.specs, config=config, train_nll=1.5,
        validation_nll=1.25, test_nll=1.75, best_epoch=1,
        history=[(1, 1.5, 1.25)])
