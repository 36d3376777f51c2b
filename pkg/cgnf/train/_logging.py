# Copyright cgnf developers.  See LICENSE file for details.

from eliot import Field, MessageType, ActionType


def _system(name):
    return u"cgnf:train:" + name


SEED = Field.forTypes(
    u"seed", [int], u"The master seed of a training run.")

ROWS = Field.forTypes(
    u"rows", [int], u"The number of rows in the dataset being trained on.")

EPOCHS = Field.forTypes(
    u"epochs", [int], u"The maximum number of epochs of a training run.")

EPOCH = Field.forTypes(
    u"epoch", [int], u"The 1-based number of a training epoch.")

TRAIN_NLL = Field.forTypes(
    u"train_nll", [float],
    u"Mean negative log-likelihood over the training batches of an epoch.")

VALIDATION_NLL = Field.forTypes(
    u"validation_nll", [float],
    u"Mean negative log-likelihood of the validation rows.")

IMPROVED = Field.forTypes(
    u"improved", [bool],
    u"Whether the validation loss reached a new minimum.")

STEP = Field.forTypes(
    u"step", [int], u"The number of optimizer steps taken so far.")

LOSS = Field.forTypes(
    u"loss", [str], u"The offending loss value, as text.")

BEST_EPOCH = Field.forTypes(
    u"best_epoch", [int], u"The epoch whose parameters were kept.")


TRAIN = ActionType(
    _system(u"train"),
    [SEED, ROWS, EPOCHS],
    [BEST_EPOCH],
    u"A flow is being fitted to a dataset by maximum likelihood.")


EPOCH_FINISHED = MessageType(
    _system(u"epoch"),
    [EPOCH, TRAIN_NLL, VALIDATION_NLL, IMPROVED],
    u"A training epoch finished.")


DIVERGED = MessageType(
    _system(u"diverged"),
    [EPOCH, STEP, LOSS],
    u"The training loss stopped being finite; training is aborted.")
