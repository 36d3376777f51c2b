# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.train.test.test_trainer -*-

"""
Maximum-likelihood training of a flow with AdamW and early stopping.
"""

import numpy as np

from characteristic import attributes
from eliot import Logger

from ..flow import make_flow, log_density, negative_log_likelihood
from ..numeric import AdamW, GradientTape
from ._dataset import TrainingError, ColumnMismatch, EmptyDataset
from ._quantize import dequantize_units
from ._logging import TRAIN, EPOCH_FINISHED, DIVERGED


__all__ = [
    "DivergedLoss", "TrainConfig", "TrainedModel", "split_indices", "split",
    "gradient_step", "train",
]


_logger = Logger()


class DivergedLoss(TrainingError):
    """
    The training loss became non-finite.
    """


@attributes(["conditioner_widths", "transformer_widths", "context_width",
             "learning_rate", "weight_decay", "batch_size", "max_epochs",
             "patience", "fractions", "seed", "quadrature_nodes"],
            defaults=dict(conditioner_widths=(40, 30, 20),
                          transformer_widths=(15, 10, 5),
                          context_width=10,
                          learning_rate=3e-4,
                          weight_decay=1e-2,
                          batch_size=1024,
                          max_epochs=100,
                          patience=10,
                          fractions=(0.99, 0.005, 0.005),
                          seed=0,
                          quadrature_nodes=50))
class TrainConfig(object):
    """
    Hyperparameters of a training run.

    :ivar tuple conditioner_widths: Hidden widths of every conditioner.
    :ivar tuple transformer_widths: Hidden widths of every integrand network.
    :ivar int context_width: Width of the conditioner output.
    :ivar float learning_rate: AdamW step size.
    :ivar float weight_decay: AdamW decoupled decay.
    :ivar int batch_size: Rows per optimizer step.
    :ivar int max_epochs: Upper bound on the number of epochs.
    :ivar int patience: Consecutive non-improving epochs tolerated before
        stopping.
    :ivar tuple fractions: Train, validation and test shares of the rows.
    :ivar int seed: Master seed for the split, the initial weights, the
        dequantization noise and the epoch shuffles.
    :ivar int quadrature_nodes: Clenshaw-Curtis node count.
    """
    def __init__(self):
        """
        :raises ValueError: If a setting is out of range.
        """
        self.conditioner_widths = tuple(
            int(w) for w in self.conditioner_widths)
        self.transformer_widths = tuple(
            int(w) for w in self.transformer_widths)
        self.fractions = tuple(float(f) for f in self.fractions)
        if len(self.fractions) != 3 or min(self.fractions) <= 0:
            raise ValueError("Need three positive split fractions, not %r" % (
                self.fractions,))
        if abs(sum(self.fractions) - 1.0) > 1e-9:
            raise ValueError("Split fractions must sum to 1, not %r" % (
                sum(self.fractions),))
        if self.batch_size < 1:
            raise ValueError("Batch size must be at least 1.")
        if self.max_epochs < 1:
            raise ValueError("At least one epoch is needed.")
        if self.patience < 0:
            raise ValueError("Patience cannot be negative.")
        if self.context_width < 1 or self.quadrature_nodes < 2:
            raise ValueError("Context width and quadrature node count are "
                             "too small.")

    def snapshot(self):
        """
        :return: A JSON-compatible ``dict`` of every setting.
        """
        return dict(
            conditioner_widths=list(self.conditioner_widths),
            transformer_widths=list(self.transformer_widths),
            context_width=self.context_width,
            learning_rate=self.learning_rate,
            weight_decay=self.weight_decay,
            batch_size=self.batch_size,
            max_epochs=self.max_epochs,
            patience=self.patience,
            fractions=list(self.fractions),
            seed=self.seed,
            quadrature_nodes=self.quadrature_nodes)


@attributes(["model", "specs", "config", "train_nll", "validation_nll",
             "test_nll", "best_epoch", "history"],
            defaults=dict(history=()))
class TrainedModel(object):
    """
    A fitted flow with what is needed to query it.

    :ivar FlowModel model: The flow, over the DAG carrying the column roles.
    :ivar tuple specs: ``ColumnSpec`` per DAG node; the dequantization
        metadata.
    :ivar TrainConfig config: The settings the model was trained with.
    :ivar float train_nll: Mean NLL of the training rows.
    :ivar float validation_nll: Mean NLL of the validation rows; the minimum
        over the epochs.
    :ivar float test_nll: Mean NLL of the test rows, computed once.
    :ivar int best_epoch: The epoch whose parameters were kept.
    :ivar tuple history: ``(epoch, train_nll, validation_nll)`` per epoch.
    """
    def __init__(self):
        self.specs = tuple(self.specs)
        self.history = tuple(tuple(entry) for entry in self.history)

    @property
    def dag(self):
        return self.model.dag

    @property
    def seed(self):
        return self.config.seed


def split_indices(n, fractions, seed):
    """
    Shuffle ``range(n)`` by ``seed`` and cut it into three disjoint parts.

    The validation and test sizes are ``n * fraction`` rounded to the nearest
    integer; the training part gets the remaining rows.

    :raises EmptyDataset: If ``n`` is 0.

    :return: ``(train, validation, test)`` index arrays.
    """
    if n < 1:
        raise EmptyDataset("Cannot split an empty dataset.")
    sizes = [int(np.floor(n * f + 0.5)) for f in fractions[1:]]
    n_train = n - sum(sizes)
    if n_train < 1:
        raise EmptyDataset("No rows left for training out of %d." % (n,))
    order = np.random.default_rng(seed).permutation(n)
    cut = n_train + sizes[0]
    return order[:n_train], order[n_train:cut], order[cut:]


def split(data, fractions, seed):
    """
    :param Dataset data: The rows to split.
    :return: ``(train, validation, test)`` datasets.
    """
    return tuple(data.subset(rows)
                 for rows in split_indices(data.size, fractions, seed))


def gradient_step(model, optimizer, batch):
    """
    One AdamW step on the mean NLL of ``batch``.

    :param FlowModel model: The current flow.
    :param AdamW optimizer: Carries the moment estimates.
    :param numpy.ndarray batch: ``(n, d)`` rows.

    :raises DivergedLoss: If the loss is not finite.

    :return: ``(new_model, loss)``.
    """
    tape = GradientTape()
    loss = negative_log_likelihood(model, batch, tape)
    value = float(loss.value)
    if not np.isfinite(value):
        raise DivergedLoss("Training loss is %r" % (value,))
    params = model.parameters()
    grads = tape.backward(loss, [tape.watch(p) for p in params])
    return model.with_parameters(optimizer.step(params, grads)), value


def _mean_nll(model, x):
    if x.shape[0] == 0:
        return float("nan")
    return float(-np.mean(log_density(model, x)))


def train(data, dag, config, logger=_logger):
    """
    Fit a flow to ``data`` by minimizing the mean negative log-likelihood.

    Discrete columns are dequantized afresh every epoch for the training
    rows; validation and test rows are dequantized once.  The parameters with
    the lowest validation loss are kept and the test loss is computed once
    at the end.  Without validation rows the epoch training loss stands in
    for the validation loss.

    :param Dataset data: The observations.
    :param CausalDag dag: The DAG the flow is built over; its nodes must be
        the dataset's columns.
    :param TrainConfig config: Hyperparameters.
    :param eliot.Logger logger: Where to log progress.

    :raises ColumnMismatch: If ``dag`` and ``data`` disagree.
    :raises EmptyDataset: If there are no training rows.
    :raises DivergedLoss: If a batch loss is not finite.

    :return: A ``TrainedModel``.
    """
    if dag.nodes != data.dag.nodes or dag.edges != data.dag.edges:
        raise ColumnMismatch(
            "Dataset columns %r do not match the DAG %r" % (
                list(data.dag.nodes), list(dag.nodes)))
    seed = config.seed
    with TRAIN(logger, seed=seed, rows=data.size,
               epochs=config.max_epochs) as action:
        train_rows, validation_rows, test_rows = split_indices(
            data.size, config.fractions, seed)
        evaluation = dequantize_units(data.specs, data.values, [seed, 0])
        validation_x = evaluation[validation_rows]
        train_x = data.values[train_rows]

        model = make_flow(
            data.dag, np.random.default_rng([seed, 1]),
            conditioner_widths=config.conditioner_widths,
            transformer_widths=config.transformer_widths,
            context_width=config.context_width,
            quadrature_nodes=config.quadrature_nodes)
        optimizer = AdamW(learning_rate=config.learning_rate,
                          weight_decay=config.weight_decay)

        best = (np.inf, model, 0)
        history = []
        stale = 0
        steps = 0
        for epoch in range(1, config.max_epochs + 1):
            epoch_rng = np.random.default_rng([seed, 2, epoch])
            x = dequantize_units(data.specs, train_x, epoch_rng)
            order = epoch_rng.permutation(x.shape[0])
            total = 0.0
            for start in range(0, x.shape[0], config.batch_size):
                batch = x[order[start:start + config.batch_size]]
                try:
                    model, loss = gradient_step(model, optimizer, batch)
                except DivergedLoss as e:
                    DIVERGED(epoch=epoch, step=steps,
                             loss=str(e)).write(logger)
                    raise
                steps += 1
                total += loss * batch.shape[0]
            train_nll = total / x.shape[0]
            validation_nll = _mean_nll(model, validation_x)
            if np.isnan(validation_nll):
                validation_nll = train_nll
            improved = validation_nll < best[0]
            EPOCH_FINISHED(epoch=epoch, train_nll=train_nll,
                           validation_nll=validation_nll,
                           improved=bool(improved)).write(logger)
            history.append((epoch, train_nll, validation_nll))
            if improved:
                best = (validation_nll, model, epoch)
                stale = 0
            else:
                stale += 1
                if stale >= max(config.patience, 1):
                    break

        validation_nll, model, best_epoch = best
        result = TrainedModel(
            model=model, specs=data.specs, config=config,
            train_nll=_mean_nll(model, evaluation[train_rows]),
            validation_nll=validation_nll,
            test_nll=_mean_nll(model, evaluation[test_rows]),
            best_epoch=best_epoch, history=history)
        action.addSuccessFields(best_epoch=best_epoch)
    return result
