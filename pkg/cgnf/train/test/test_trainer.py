# Copyright cgnf developers.  See LICENSE file for details.

"""
Tests for ``cgnf.train._trainer``.
"""

import numpy as np

from eliot.testing import (
    validateLogging, assertHasAction, LoggedMessage,
)
from twisted.trial.unittest import SynchronousTestCase

from ...flow import make_flow
from ...graph import parse_dag
from ...numeric import AdamW
from .. import (
    ColumnSpec, ColumnKind, ColumnMismatch, EmptyDataset, DivergedLoss,
    TrainConfig, make_dataset, split_indices, split, gradient_step, train,
)
from .._logging import TRAIN, EPOCH_FINISHED, DIVERGED
from ..testtools import confounded_dataset


SMALL = dict(conditioner_widths=(8,), transformer_widths=(8,),
             context_width=4, quadrature_nodes=10)


def gaussian_dataset(values):
    """
    A one-column continuous dataset.
    """
    dag = parse_dag(u"X")
    return make_dataset(
        dag, [ColumnSpec(name=u"X", kind=ColumnKind.CONTINUOUS)],
        np.asarray(values, dtype=float).reshape(-1, 1))


class SplitTests(SynchronousTestCase):
    """
    Tests for ``split_indices`` and ``split``.
    """
    def test_small_sizes(self):
        """
        10 rows split 0.8/0.1/0.1 give 8, 1 and 1 rows.
        """
        self.assertEqual(
            [8, 1, 1],
            [len(part) for part in split_indices(10, (0.8, 0.1, 0.1), 0)])

    def test_large_sizes(self):
        """
        The validation and test sizes are rounded shares, the remainder goes
        to training.
        """
        self.assertEqual(
            [1922316, 9709, 9709],
            [len(part) for part in
             split_indices(1941734, (0.99, 0.005, 0.005), 0)])

    def test_disjoint_cover(self):
        """
        The three parts partition the rows.
        """
        parts = split_indices(1000, (0.99, 0.005, 0.005), 7)
        rows = np.concatenate(parts)
        self.assertEqual(list(range(1000)), sorted(rows.tolist()))

    def test_deterministic(self):
        """
        The same seed gives the same split; another seed a different one.
        """
        first = split_indices(100, (0.8, 0.1, 0.1), 3)
        second = split_indices(100, (0.8, 0.1, 0.1), 3)
        other = split_indices(100, (0.8, 0.1, 0.1), 4)
        self.assertEqual(
            ([p.tolist() for p in first], False),
            ([p.tolist() for p in second],
             first[0].tolist() == other[0].tolist()))

    def test_empty(self):
        """
        An empty dataset cannot be split.
        """
        self.assertRaises(EmptyDataset, split_indices, 0, (0.8, 0.1, 0.1), 0)

    def test_split_datasets(self):
        """
        ``split`` returns the datasets holding the split rows.
        """
        data = confounded_dataset(20)
        parts = split(data, (0.8, 0.1, 0.1), 1)
        rows = split_indices(20, (0.8, 0.1, 0.1), 1)
        self.assertEqual(
            [data.values[r].tolist() for r in rows],
            [part.values.tolist() for part in parts])


class TrainConfigTests(SynchronousTestCase):
    """
    Tests for ``TrainConfig``.
    """
    def test_defaults(self):
        """
        The defaults are the documented hyperparameters.
        """
        config = TrainConfig()
        self.assertEqual(
            ((40, 30, 20), (15, 10, 5), 10, 3e-4, 1e-2, 1024, 10,
             (0.99, 0.005, 0.005), 50),
            (config.conditioner_widths, config.transformer_widths,
             config.context_width, config.learning_rate,
             config.weight_decay, config.batch_size, config.patience,
             config.fractions, config.quadrature_nodes))

    def test_fractions_sum(self):
        """
        Fractions must add up to 1.
        """
        self.assertRaises(ValueError, TrainConfig, fractions=(0.5, 0.2, 0.2))

    def test_fractions_positive(self):
        """
        Every fraction must be positive.
        """
        self.assertRaises(ValueError, TrainConfig, fractions=(1.0, 0.0, 0.0))

    def test_batch_size(self):
        """
        Batches hold at least one row.
        """
        self.assertRaises(ValueError, TrainConfig, batch_size=0)

    def test_negative_patience(self):
        """
        Patience cannot be negative.
        """
        self.assertRaises(ValueError, TrainConfig, patience=-1)

    def test_snapshot(self):
        """
        A snapshot rebuilds an equal configuration.
        """
        config = TrainConfig(seed=12, **SMALL)
        self.assertEqual(config, TrainConfig(**config.snapshot()))


class GradientStepTests(SynchronousTestCase):
    """
    Tests for ``gradient_step``.
    """
    def test_loss_decreases(self):
        """
        Repeated steps on one batch lower its loss.
        """
        data = gaussian_dataset(np.random.default_rng(0).normal(
            2.0, 0.5, size=64))
        model = make_flow(data.dag, np.random.default_rng(1),
                          transformer_widths=(8,), context_width=4,
                          quadrature_nodes=10)
        optimizer = AdamW(learning_rate=1e-2, weight_decay=0.0)
        losses = []
        for _ in range(10):
            model, loss = gradient_step(model, optimizer, data.values)
            losses.append(loss)
        self.assertLess(losses[-1], losses[0])

    def test_diverged(self):
        """
        A non-finite loss raises ``DivergedLoss``.
        """
        data = gaussian_dataset([1e200, 1e200])
        model = make_flow(data.dag, np.random.default_rng(1),
                          transformer_widths=(8,), context_width=4,
                          quadrature_nodes=10)
        self.assertRaises(
            DivergedLoss, gradient_step, model, AdamW(), data.values)


class TrainTests(SynchronousTestCase):
    """
    Tests for ``train``.
    """
    def test_standard_normal(self):
        """
        A flow trained on standard normal samples scores the test rows
        within 0.05 nats of the true density.
        """
        values = np.random.default_rng(11).standard_normal(2000)
        data = gaussian_dataset(values)
        config = TrainConfig(
            learning_rate=5e-3, batch_size=200, max_epochs=60,
            fractions=(0.8, 0.1, 0.1), seed=5, transformer_widths=(15, 10, 5))
        trained = train(data, data.dag, config)
        test_rows = split_indices(2000, config.fractions, 5)[2]
        oracle = np.mean(0.5 * (values[test_rows] ** 2 + np.log(2 * np.pi)))
        self.assertLess(abs(trained.test_nll - oracle), 0.05)

    def test_zero_patience(self):
        """
        With one epoch and no patience the first epoch's parameters are kept.
        """
        data = confounded_dataset(40)
        trained = train(data, data.dag, TrainConfig(
            patience=0, max_epochs=1, fractions=(0.8, 0.1, 0.1), **SMALL))
        self.assertEqual(
            (1, 1), (trained.best_epoch, len(trained.history)))

    def test_result(self):
        """
        The trained model records its configuration, the column specs and
        finite losses; the validation loss is the best one in the history.
        """
        data = confounded_dataset(40)
        config = TrainConfig(max_epochs=3, batch_size=16,
                             fractions=(0.8, 0.1, 0.1), **SMALL)
        trained = train(data, data.dag, config)
        self.assertEqual(
            (config, data.specs, data.dag, True,
             min(entry[2] for entry in trained.history)),
            (trained.config, trained.specs, trained.dag,
             bool(np.isfinite([trained.train_nll, trained.test_nll]).all()),
             trained.validation_nll))

    def test_deterministic(self):
        """
        The same seed trains the same parameters.
        """
        data = confounded_dataset(40)
        config = TrainConfig(max_epochs=2, batch_size=16,
                             fractions=(0.8, 0.1, 0.1), **SMALL)
        first = train(data, data.dag, config).model.parameters()
        second = train(data, data.dag, config).model.parameters()
        self.assertEqual(
            [p.tolist() for p in first], [p.tolist() for p in second])

    def test_dag_mismatch(self):
        """
        The DAG must be the one the dataset is over.
        """
        data = confounded_dataset(10)
        self.assertRaises(
            ColumnMismatch, train, data, parse_dag(u"O; C; A; Y; C->A"),
            TrainConfig(**SMALL))

    @validateLogging(None)
    def test_logging(self, logger):
        """
        Training logs an action and one message per epoch.
        """
        data = confounded_dataset(40)
        train(data, data.dag, TrainConfig(
            max_epochs=2, patience=5, seed=3, fractions=(0.8, 0.1, 0.1),
            **SMALL), logger=logger)
        assertHasAction(self, logger, TRAIN, True,
                        startFields=dict(seed=3, rows=40, epochs=2))
        self.assertEqual(
            [1, 2],
            [m.message[u"epoch"]
             for m in LoggedMessage.ofType(logger.messages, EPOCH_FINISHED)])

    @validateLogging(None)
    def test_diverged_logged(self, logger):
        """
        A diverging run logs the failure and raises ``DivergedLoss``.
        """
        data = gaussian_dataset([1e200] * 20)
        self.assertRaises(
            DivergedLoss, train, data, data.dag,
            TrainConfig(max_epochs=2, **SMALL), logger=logger)
        assertHasAction(self, logger, TRAIN, False)
        self.assertEqual(
            [(1, 0)],
            [(m.message[u"epoch"], m.message[u"step"])
             for m in LoggedMessage.ofType(logger.messages, DIVERGED)])
